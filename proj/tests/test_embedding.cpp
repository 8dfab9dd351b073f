#include <doctest.h>

#include <cmath>
#include <fstream>

#include "srl/embedding.hpp"
#include "srl/rng.hpp"

using namespace srl;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("loads a small table with and without header") {
  std::string path = write_temp("emb_plain.txt",
                                "xe 1.0 2.0 3.0\n"
                                "nhà 4.0 5.0 6.0\n");
  EmbeddingTable table = EmbeddingTable::load(path);
  CHECK(table.size() == 2);
  CHECK(table.dimension() == 3);
  REQUIRE(table.lookup("xe"));
  CHECK((*table.lookup("xe"))[1] == 2.0);

  std::string with_header = write_temp("emb_header.txt",
                                       "2 3\n"
                                       "xe 1 2 3\n"
                                       "nhà 4 5 6\n");
  EmbeddingTable t2 = EmbeddingTable::load(with_header);
  CHECK(t2.size() == 2);
  CHECK(t2.dimension() == 3);
}

TEST_CASE("header count mismatch warns but keeps the actual entries") {
  std::string path = write_temp("emb_mismatch.txt",
                                "5 2\n"
                                "xe 1 2\n");
  std::vector<std::string> warnings;
  EmbeddingTable table = EmbeddingTable::load(path, &warnings);
  CHECK(table.size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("declares 5") != std::string::npos);
}

TEST_CASE("ragged and non-numeric rows are rejected with line numbers") {
  std::string ragged = write_temp("emb_ragged.txt",
                                  "xe 1 2 3\n"
                                  "nhà 4 5\n");
  CHECK_THROWS_WITH_AS(EmbeddingTable::load(ragged),
                       doctest::Contains(":2:"), std::runtime_error);
  std::string bad = write_temp("emb_nan.txt", "xe 1 oops 3\n");
  CHECK_THROWS_AS(EmbeddingTable::load(bad), std::runtime_error);
}

TEST_CASE("duplicate words: last wins, with a warning") {
  std::string path = write_temp("emb_dup.txt",
                                "xe 1 1\n"
                                "xe 2 2\n");
  std::vector<std::string> warnings;
  EmbeddingTable table = EmbeddingTable::load(path, &warnings);
  CHECK(table.size() == 1);
  CHECK((*table.lookup("xe"))[0] == 2.0);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("duplicate") != std::string::npos);
}

TEST_CASE("lookup is case-normalized") {
  EmbeddingTable table(2);
  table.insert("Nam", {1.0, 0.0});
  CHECK(table.lookup("nam"));
  CHECK(table.lookup("NAM"));
}

TEST_CASE("token averaging") {
  EmbeddingTable table(2);
  table.insert("u", {2.0, 4.0});
  table.insert("v", {4.0, 0.0});

  CHECK(embed_tokens({"u"}, table) == std::vector<double>{2.0, 4.0});
  CHECK(embed_tokens({"u", "v"}, table) == std::vector<double>{3.0, 2.0});
  // Unknown words contribute zero but count in the denominator.
  CHECK(embed_tokens({"u", "zzz"}, table) == std::vector<double>{1.0, 2.0});
  CHECK(embed_tokens({"zzz", "yyy"}, table) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("substitution swaps the lexical template for a dense block") {
  EmbeddingTable table(2);
  table.insert("là", {0.5, -0.5});
  table.insert("học", {1.0, 1.0});
  table.insert("bài", {3.0, 1.0});

  FeatureBundle bundle;
  bundle.values[Template::PredicateWord] = "là";
  bundle.values[Template::PhraseType] = "NP";
  FeatureBundle out = substitute_embedding(bundle, Template::PredicateWord, table);
  CHECK(out.values.count(Template::PredicateWord) == 0);
  CHECK(out.values.at(Template::PhraseType) == "NP");  // untouched
  REQUIRE(out.dense.size() == 1);
  CHECK(out.dense[0].values == std::vector<double>{0.5, -0.5});

  // A multiword predicate averages its parts.
  FeatureBundle multi;
  multi.values[Template::PredicateWord] = "học_bài";
  FeatureBundle out2 = substitute_embedding(multi, Template::PredicateWord, table);
  CHECK(out2.dense[0].values == std::vector<double>{2.0, 1.0});

  // Substituting a template that is not populated is an error.
  FeatureBundle missing;
  missing.values[Template::PhraseType] = "NP";
  CHECK_THROWS_AS(substitute_embedding(missing, Template::HeadWord, table),
                  std::invalid_argument);

  // Against a shared dictionary, substitution drops exactly the lexical
  // index and leaves every other categorical index untouched.
  FeatureBundle rich;
  rich.values[Template::PredicateWord] = "là";
  rich.values[Template::PhraseType] = "NP";
  rich.values[Template::FunctionTag] = "SUB";
  rich.values[Template::Distance] = "3";
  Vocabulary vocab = Vocabulary::fit({rich});
  FeatureVector before = vectorize(rich, vocab);
  FeatureVector after =
      vectorize(substitute_embedding(rich, Template::PredicateWord, table), vocab);
  int lexical = vocab.lookup(Template::PredicateWord, "là");
  std::vector<int> expected;
  for (int idx : before.indices)
    if (idx != lexical) expected.push_back(idx);
  CHECK(after.indices == expected);
  CHECK(after.dense.size() == 2);
}

TEST_CASE("projection recovers a plane embedded in higher dimensions") {
  const int dim = 50;
  Rng rng(2024);
  std::vector<double> u(dim, 0.0), w(dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    u[i] = rng.uniform(-1, 1);
    w[i] = rng.uniform(-1, 1);
  }
  // Orthonormalize.
  double nu = 0;
  for (double x : u) nu += x * x;
  for (double& x : u) x /= std::sqrt(nu);
  double uw = 0;
  for (int i = 0; i < dim; ++i) uw += u[i] * w[i];
  for (int i = 0; i < dim; ++i) w[i] -= uw * u[i];
  double nw = 0;
  for (double x : w) nw += x * x;
  for (double& x : w) x /= std::sqrt(nw);

  EmbeddingTable table(dim);
  std::vector<std::string> words;
  std::vector<std::vector<double>> points;
  for (int k = 0; k < 12; ++k) {
    double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    std::vector<double> p(dim);
    for (int i = 0; i < dim; ++i) p[i] = 10.0 + a * u[i] + b * w[i];
    std::string word = "w" + std::to_string(k);
    table.insert(word, p);
    words.push_back(word);
    points.push_back(p);
  }

  auto projected = project_2d(table, words);
  REQUIRE(projected.size() == words.size());

  // Reconstruction: mean + x*pc1 + y*pc2 must reproduce each point. Recover
  // the components by projecting the data onto the plane they span.
  std::vector<double> mean(dim, 0.0);
  for (const auto& p : points)
    for (int i = 0; i < dim; ++i) mean[i] += p[i] / points.size();
  // The two components capture each centered point entirely, so the
  // reconstruction residual ||p-mean||^2 - (x^2+y^2) vanishes.
  for (std::size_t k = 0; k < words.size(); ++k) {
    double norm2 = 0;
    for (int i = 0; i < dim; ++i)
      norm2 += (points[k][i] - mean[i]) * (points[k][i] - mean[i]);
    double planar = std::get<1>(projected[k]) * std::get<1>(projected[k]) +
                    std::get<2>(projected[k]) * std::get<2>(projected[k]);
    CHECK(std::abs(norm2 - planar) < 1e-12);
  }
  // Check pairwise distances are preserved (rigid up to rotation/sign).
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      double d_orig = 0;
      for (int i = 0; i < dim; ++i)
        d_orig += (points[a][i] - points[b][i]) * (points[a][i] - points[b][i]);
      double dx = std::get<1>(projected[a]) - std::get<1>(projected[b]);
      double dy = std::get<2>(projected[a]) - std::get<2>(projected[b]);
      CHECK(std::abs(std::sqrt(d_orig) - std::sqrt(dx * dx + dy * dy)) < 1e-6);
    }

  // Duplicated points land on identical coordinates.
  EmbeddingTable dup(dim);
  dup.insert("a", points[0]);
  dup.insert("b", points[1]);
  dup.insert("c", points[2]);
  dup.insert("d", points[0]);
  auto pd = project_2d(dup, {"a", "b", "c", "d"});
  CHECK(std::get<1>(pd[0]) == std::get<1>(pd[3]));
  CHECK(std::get<2>(pd[0]) == std::get<2>(pd[3]));
}

TEST_CASE("projection errors") {
  EmbeddingTable table(3);
  table.insert("a", {1, 0, 0});
  table.insert("b", {0, 1, 0});
  CHECK_THROWS_AS(project_2d(table, {"a", "b"}), std::invalid_argument);

  EmbeddingTable flat(3);
  flat.insert("a", {1, 1, 1});
  flat.insert("b", {1, 1, 1});
  flat.insert("c", {1, 1, 1});
  CHECK_THROWS_AS(project_2d(flat, {"a", "b", "c"}), std::runtime_error);
}

TEST_CASE("projection is shift invariant up to per-axis sign") {
  const int dim = 10;
  Rng rng(77);
  EmbeddingTable base(dim), shifted(dim);
  std::vector<std::string> words;
  for (int k = 0; k < 8; ++k) {
    std::vector<double> p(dim), q(dim);
    for (int i = 0; i < dim; ++i) {
      p[i] = rng.uniform(-2, 2);
      q[i] = p[i] + 5.0;  // global shift
    }
    std::string word = "w" + std::to_string(k);
    base.insert(word, p);
    shifted.insert(word, q);
    words.push_back(word);
  }
  auto a = project_2d(base, words);
  auto b = project_2d(shifted, words);
  // Determine per-axis sign from the first word with a nonzero coordinate.
  double sx = std::get<1>(a[0]) * std::get<1>(b[0]) >= 0 ? 1.0 : -1.0;
  double sy = std::get<2>(a[0]) * std::get<2>(b[0]) >= 0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < words.size(); ++k) {
    CHECK(std::get<1>(a[k]) == doctest::Approx(sx * std::get<1>(b[k])).epsilon(1e-6));
    CHECK(std::get<2>(a[k]) == doctest::Approx(sy * std::get<2>(b[k])).epsilon(1e-6));
  }
}
