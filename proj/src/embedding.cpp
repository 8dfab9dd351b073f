#include "srl/embedding.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srl {

std::string EmbeddingTable::normalize(const std::string& word) {
  std::string out = word;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const std::vector<double>* EmbeddingTable::lookup(
    const std::string& word) const {
  auto it = entries_.find(normalize(word));
  return it == entries_.end() ? nullptr : &it->second;
}

void EmbeddingTable::insert(const std::string& word,
                            std::vector<double> vec) {
  if (dimension_ == 0) dimension_ = static_cast<int>(vec.size());
  if (static_cast<int>(vec.size()) != dimension_)
    throw std::runtime_error("embedding dimension mismatch for '" + word +
                             "'");
  entries_[normalize(word)] = std::move(vec);
}

EmbeddingTable EmbeddingTable::load(const std::string& path,
                                    std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);
  EmbeddingTable table;
  std::string line;
  int lineno = 0;
  long declared_count = -1;
  bool first_content_line = true;
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<std::string> fields;
    std::string f;
    while (ss >> f) fields.push_back(f);
    if (fields.empty()) continue;
    if (first_content_line && fields.size() == 2) {
      // "V D" header: both fields numeric.
      char* end1 = nullptr;
      char* end2 = nullptr;
      long v = std::strtol(fields[0].c_str(), &end1, 10);
      long d = std::strtol(fields[1].c_str(), &end2, 10);
      if (*end1 == '\0' && *end2 == '\0' && v > 0 && d > 0) {
        declared_count = v;
        table.dimension_ = static_cast<int>(d);
        first_content_line = false;
        continue;
      }
    }
    first_content_line = false;
    if (fields.size() < 2)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": embedding row has no values");
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      char* end = nullptr;
      double x = std::strtod(fields[i].c_str(), &end);
      if (end == fields[i].c_str() || *end != '\0' || !std::isfinite(x))
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": non-numeric field '" + fields[i] + "'");
      vec.push_back(x);
    }
    if (table.dimension_ == 0)
      table.dimension_ = static_cast<int>(vec.size());
    if (static_cast<int>(vec.size()) != table.dimension_)
      throw std::runtime_error(
          path + ":" + std::to_string(lineno) + ": ragged row (" +
          std::to_string(vec.size()) + " values, expected " +
          std::to_string(table.dimension_) + ")");
    std::string key = normalize(fields[0]);
    if (table.entries_.count(key))
      warn(path + ":" + std::to_string(lineno) + ": duplicate word '" +
           fields[0] + "', last entry wins");
    table.entries_[key] = std::move(vec);
  }
  if (declared_count >= 0 &&
      declared_count != static_cast<long>(table.entries_.size()))
    warn(path + ": header declares " + std::to_string(declared_count) +
         " words but " + std::to_string(table.entries_.size()) +
         " were read; keeping actual count");
  return table;
}

std::vector<double> embed_tokens(const std::vector<std::string>& words,
                                 const EmbeddingTable& table) {
  std::vector<double> sum(table.dimension(), 0.0);
  if (words.empty()) return sum;
  for (const std::string& w : words) {
    const std::vector<double>* v = table.lookup(w);
    if (!v) continue;  // zero vector, still counted below
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
  }
  double n = static_cast<double>(words.size());
  for (double& x : sum) x /= n;
  return sum;
}

std::vector<std::string> embedding_tokens(const std::string& value,
                                          const EmbeddingTable& table) {
  std::vector<std::string> words;
  std::istringstream ss(value);
  std::string w;
  while (ss >> w) words.push_back(w);
  if (words.size() == 1 && !table.lookup(words[0]) &&
      words[0].find('_') != std::string::npos) {
    // Multiword token not trained as a unit: average its parts.
    std::string part;
    std::vector<std::string> parts;
    for (char c : words[0]) {
      if (c == '_') {
        if (!part.empty()) parts.push_back(part);
        part.clear();
      } else {
        part += c;
      }
    }
    if (!part.empty()) parts.push_back(part);
    if (!parts.empty()) return parts;
  }
  return words;
}

FeatureBundle substitute_embedding(const FeatureBundle& bundle, Template which,
                                   const EmbeddingTable& table) {
  if (which != Template::PredicateWord && which != Template::HeadWord)
    throw std::invalid_argument("only lexical templates can be substituted");
  auto it = bundle.values.find(which);
  if (it == bundle.values.end())
    throw std::invalid_argument(std::string("template '") +
                                template_name(which) +
                                "' is not populated in this bundle");
  FeatureBundle out = bundle;
  std::vector<std::string> words = embedding_tokens(it->second, table);
  out.values.erase(which);
  out.dense.push_back(DenseBlock{which, embed_tokens(words, table)});
  return out;
}

namespace {

// Leading eigenvector of the symmetric matrix m (power iteration). When
// orthogonal_to is given the iterate is re-projected away from it each step,
// which keeps the deflated component orthogonal to machine precision.
std::vector<double> power_iterate(const std::vector<std::vector<double>>& m,
                                  double tol, int max_iters,
                                  const std::vector<double>* orthogonal_to) {
  std::size_t d = m.size();
  // Start from the axis with the largest diagonal mass.
  std::size_t start = 0;
  for (std::size_t i = 1; i < d; ++i)
    if (m[i][i] > m[start][start]) start = i;
  std::vector<double> v(d, 0.0);
  v[start] = 1.0;
  std::vector<double> next(d);
  for (int iter = 0; iter < max_iters; ++iter) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += m[i][j] * v[j];
      next[i] = s;
    }
    if (orthogonal_to) {
      double proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += next[i] * (*orthogonal_to)[i];
      for (std::size_t i = 0; i < d; ++i) next[i] -= proj * (*orthogonal_to)[i];
    }
    double norm = 0.0;
    for (double x : next) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-300) throw std::runtime_error("zero-variance data");
    double diff = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      next[i] /= norm;
      diff += (next[i] - v[i]) * (next[i] - v[i]);
    }
    // A sign flip between iterations means the iterate oscillates; compare
    // against the flipped vector as well.
    double diff_neg = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      diff_neg += (next[i] + v[i]) * (next[i] + v[i]);
    v = next;
    if (std::min(diff, diff_neg) < tol * tol) break;
  }
  return v;
}

}  // namespace

std::vector<std::tuple<std::string, double, double>> project_2d(
    const EmbeddingTable& table, const std::vector<std::string>& words) {
  if (words.size() < 3)
    throw std::invalid_argument("projection needs at least 3 words");
  std::size_t d = static_cast<std::size_t>(table.dimension());
  std::vector<std::vector<double>> rows;
  rows.reserve(words.size());
  for (const std::string& w : words) {
    const std::vector<double>* v = table.lookup(w);
    if (!v) throw std::runtime_error("word not in embedding table: " + w);
    rows.push_back(*v);
  }
  std::vector<double> mean(d, 0.0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < d; ++i) mean[i] += r[i];
  for (double& x : mean) x /= static_cast<double>(rows.size());
  for (auto& r : rows)
    for (std::size_t i = 0; i < d; ++i) r[i] -= mean[i];

  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& r : rows)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) cov[i][j] += r[i] * r[j];
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) total += cov[i][i];
  if (total < 1e-300) throw std::runtime_error("zero-variance data");

  const double tol = 1e-9;
  const int max_iters = 1000;
  std::vector<double> pc1 = power_iterate(cov, tol, max_iters, nullptr);
  // Deflate and find the second component.
  double lambda1 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += cov[i][j] * pc1[j];
    lambda1 += pc1[i] * s;
  }
  std::vector<std::vector<double>> deflated = cov;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      deflated[i][j] -= lambda1 * pc1[i] * pc1[j];
  std::vector<double> pc2 = power_iterate(deflated, tol, max_iters, &pc1);

  // Deterministic sign: the largest-magnitude coefficient is positive.
  for (auto* pc : {&pc1, &pc2}) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < d; ++i)
      if (std::abs((*pc)[i]) > std::abs((*pc)[arg])) arg = i;
    if ((*pc)[arg] < 0)
      for (double& x : *pc) x = -x;
  }

  std::vector<std::tuple<std::string, double, double>> out;
  out.reserve(words.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    double x = 0.0, y = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      x += rows[k][i] * pc1[i];
      y += rows[k][i] * pc2[i];
    }
    out.emplace_back(words[k], x, y);
  }
  return out;
}

}  // namespace srl
