#pragma once

#include <string_view>

#include "wsd/thesaurus.hpp"
#include "wsd/vectors.hpp"

namespace wsd {

/// Noun-to-noun similarity on the [0, 1] scale shared by both backends.
class NounSimilarity {
 public:
  virtual ~NounSimilarity() = default;
  virtual double operator()(std::string_view a, std::string_view b) const = 0;
};

/// Table path similarity divided by 11.
class ThesaurusSimilarity final : public NounSimilarity {
 public:
  explicit ThesaurusSimilarity(const Thesaurus& t) : thesaurus_(&t) {}
  double operator()(std::string_view a, std::string_view b) const override {
    return static_cast<double>(thesaurus_->similarity(a, b)) / SimTable::kMax;
  }

 private:
  const Thesaurus* thesaurus_;
};

/// TF·IDF cosine.
class CosineSimilarity final : public NounSimilarity {
 public:
  explicit CosineSimilarity(const VectorTable& vt) : table_(&vt) {}
  double operator()(std::string_view a, std::string_view b) const override {
    return table_->cosine(a, b);
  }

 private:
  const VectorTable* table_;
};

}  // namespace wsd
