#ifndef SRL_EMBEDDING_HPP
#define SRL_EMBEDDING_HPP

#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "srl/features.hpp"

namespace srl {

// Word -> dense vector table read from a text file: an optional "V D" header
// line followed by "word v1 ... vD" rows. Lookups are ASCII-lowercased, the
// same normalization the vectors were trained with.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension) : dimension_(dimension) {}

  static EmbeddingTable load(const std::string& path,
                             std::vector<std::string>* warnings = nullptr);

  int dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  // nullptr when the word is unknown.
  const std::vector<double>* lookup(const std::string& word) const;
  void insert(const std::string& word, std::vector<double> vec);
  const std::unordered_map<std::string, std::vector<double>>& entries() const {
    return entries_;
  }

  static std::string normalize(const std::string& word);

 private:
  int dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

// Arithmetic mean of the word vectors; unknown words contribute a zero
// vector and still count in the denominator.
std::vector<double> embed_tokens(const std::vector<std::string>& words,
                                 const EmbeddingTable& table);

// Words making up a lexical feature value: whitespace-separated tokens, with
// a fallback underscore split when the whole token is not in the table.
std::vector<std::string> embedding_tokens(const std::string& value,
                                          const EmbeddingTable& table);

// Removes the named lexical template from the categorical block and appends
// its averaged vector as a dense block. The template must be populated.
FeatureBundle substitute_embedding(const FeatureBundle& bundle, Template which,
                                   const EmbeddingTable& table);

// Projection of the selected words onto their first two principal
// components (power iteration with deflation, tolerance 1e-9, at most 1000
// iterations). Requires at least 3 words and non-degenerate variance.
std::vector<std::tuple<std::string, double, double>> project_2d(
    const EmbeddingTable& table, const std::vector<std::string>& words);

}  // namespace srl

#endif  // SRL_EMBEDDING_HPP
