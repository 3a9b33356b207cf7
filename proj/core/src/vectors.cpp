#include "wsd/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "wsd/error.hpp"

namespace wsd {

std::string context_key(std::string_view case_id, std::string_view verb) {
  std::string k;
  k.reserve(case_id.size() + verb.size() + 1);
  k.append(case_id).push_back(':');
  k.append(verb);
  return k;
}

VectorTable VectorTable::build(const TupleCounts& counts) {
  if (counts.empty()) throw Error("cannot build vectors from empty tuple counts");
  VectorTable vt;

  std::set<std::string_view> nouns;
  for (const auto& [t, f] : counts) {
    nouns.insert(t.noun);
    auto key = context_key(t.case_id, t.verb);
    auto [it, inserted] = vt.context_ids_.emplace(key, static_cast<std::uint32_t>(vt.contexts_.size()));
    if (inserted) {
      vt.contexts_.push_back(std::move(key));
      vt.nf_.push_back(0);
    }
    // Tuples are unique per (noun, case, verb), so each contributes one noun type.
    ++vt.nf_[it->second];
  }
  vt.noun_types_ = nouns.size();
  const double n = static_cast<double>(vt.noun_types_);

  for (const auto& [t, f] : counts) {
    auto ctx = vt.context_ids_.at(context_key(t.case_id, t.verb));
    double idf = std::log(n / static_cast<double>(vt.nf_[ctx]));
    vt.vectors_[t.noun].entries.emplace_back(ctx, static_cast<double>(f) * idf);
  }
  for (auto& [noun, v] : vt.vectors_) {
    std::sort(v.entries.begin(), v.entries.end());
    double sq = 0.0;
    for (const auto& [ctx, w] : v.entries) sq += w * w;
    v.norm = std::sqrt(sq);
  }
  return vt;
}

std::int64_t VectorTable::noun_frequency(std::string_view case_id, std::string_view verb) const {
  auto it = context_ids_.find(context_key(case_id, verb));
  return it == context_ids_.end() ? 0 : nf_[it->second];
}

const VectorTable::Vec* VectorTable::find(std::string_view noun) const {
  auto it = vectors_.find(std::string(noun));
  return it == vectors_.end() ? nullptr : &it->second;
}

bool VectorTable::contains(std::string_view noun) const { return find(noun) != nullptr; }

double VectorTable::weight(std::string_view noun, std::string_view case_id,
                           std::string_view verb) const {
  const Vec* v = find(noun);
  auto ctx = context_ids_.find(context_key(case_id, verb));
  if (v == nullptr || ctx == context_ids_.end()) return 0.0;
  auto it = std::lower_bound(v->entries.begin(), v->entries.end(), Entry{ctx->second, -1.0});
  return it != v->entries.end() && it->first == ctx->second ? it->second : 0.0;
}

double VectorTable::norm(std::string_view noun) const {
  const Vec* v = find(noun);
  return v ? v->norm : 0.0;
}

double VectorTable::cosine(std::string_view a, std::string_view b) const {
  const Vec* va = find(a);
  const Vec* vb = find(b);
  if (va == nullptr || vb == nullptr || va->norm == 0.0 || vb->norm == 0.0) return 0.0;
  if (va == vb) return 1.0;
  double dot = 0.0;
  auto i = va->entries.begin();
  auto j = vb->entries.begin();
  while (i != va->entries.end() && j != vb->entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  // Rounding can push identical vectors a hair past 1.
  return std::clamp(dot / (va->norm * vb->norm), 0.0, 1.0);
}

void VectorTable::write(std::ostream& out) const {
  auto old_precision = out.precision(12);
  std::map<std::string_view, const Vec*> sorted;
  for (const auto& [noun, v] : vectors_) sorted.emplace(noun, &v);
  for (const auto& [noun, v] : sorted) {
    std::map<std::string_view, double> row;
    for (const auto& [ctx, w] : v->entries) row.emplace(contexts_[ctx], w);
    for (const auto& [ctx, w] : row) out << noun << '\t' << ctx << '\t' << w << '\n';
  }
  out.precision(old_precision);
}

}  // namespace wsd
