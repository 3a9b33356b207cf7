#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "wsd/http.hpp"
#include "wsd/session.hpp"
#include "wsd/synthetic.hpp"

using namespace wsd;
using nlohmann::json;

namespace {

class Api : public ::testing::Test {
 protected:
  void SetUp() override {
    SyntheticConfig cfg;
    cfg.num_senses = 2;
    cfg.examples_per_sense = 15;
    cfg.seed = 21;
    corpus_ = generate_synthetic(cfg);
    SenseDatabase db;
    for (std::size_t i = 0; i < corpus_.examples.size(); ++i) {
      const auto& e = corpus_.examples[i];
      db.declare_sense(e.verb, *e.gold_sense);
      if (i < 2)
        db.commit(e, *e.gold_sense);
      else
        pool_.add(e);
    }
    sim_ = std::make_unique<ThesaurusSimilarity>(corpus_.thesaurus);
    session_ = std::make_unique<Session>(SamplerState(db, pool_, *sim_, &corpus_.thesaurus, {}),
                                         Strategy{StrategyKind::uncertainty});
    register_routes(server_, *session_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  SyntheticCorpus corpus_;
  ExampleSet pool_;
  std::unique_ptr<ThesaurusSimilarity> sim_;
  std::unique_ptr<Session> session_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST_F(Api, TenRoundsOfNextAndLabel) {
  httplib::Client cli("127.0.0.1", port_);
  for (int i = 0; i < 10; ++i) {
    auto n = cli.Get("/api/next");
    ASSERT_TRUE(n);
    ASSERT_EQ(n->status, 200);
    EXPECT_EQ(n->get_header_value("Access-Control-Allow-Origin"), "*");
    auto id = json::parse(n->body)["example"]["id"].get<std::string>();
    json body{{"example_id", id}, {"sense", *pool_.find(id)->gold_sense}};
    auto l = cli.Post("/api/label", body.dump(), "application/json");
    ASSERT_TRUE(l);
    ASSERT_EQ(l->status, 200) << l->body;
    EXPECT_EQ(json::parse(l->body)["iterations"], i + 1);
  }
  auto s = cli.Get("/api/state");
  ASSERT_TRUE(s);
  auto j = json::parse(s->body);
  EXPECT_EQ(j["pool"], 18);
  EXPECT_EQ(j["strategy"], "uncertainty");
  auto c = cli.Get("/api/curve");
  ASSERT_TRUE(c);
  EXPECT_EQ(json::parse(c->body)["points"].size(), 11u);
}

TEST_F(Api, ErrorStatuses) {
  httplib::Client cli("127.0.0.1", port_);
  auto bad = cli.Post("/api/label", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto conflict = cli.Post("/api/label", R"({"example_id":"zzz","sense":"s0"})", "application/json");
  ASSERT_TRUE(conflict);
  EXPECT_EQ(conflict->status, 409);
  auto id = json::parse(cli.Get("/api/next")->body)["example"]["id"].get<std::string>();
  auto wrong = cli.Post("/api/label", json{{"example_id", id}, {"sense", "nope"}}.dump(), "application/json");
  ASSERT_TRUE(wrong);
  EXPECT_EQ(wrong->status, 422);
  auto missing = cli.Get("/api/example/nothing-here");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto found = cli.Get(("/api/example/" + id).c_str());
  ASSERT_TRUE(found);
  EXPECT_EQ(found->status, 200);
  auto pre = cli.Options("/api/label");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
}
