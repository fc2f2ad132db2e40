#include "tss/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "tss/generate.hpp"
#include "tss/rng.hpp"

using tss::BlockLayout;
using tss::DirectedEdge;
using tss::RankProfile;
using tss::RootedTree;
using tss::TssMatrix;

namespace {

std::filesystem::path temp_file(const char* stem) {
  static int counter = 0;
  return std::filesystem::temp_directory_path() /
         (std::string(stem) + "_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter++));
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("csv matrix roundtrip is exact") {
  tss::GaussianSource rng(11);
  Eigen::MatrixXd m = rng.matrix(5, 3);
  m(0, 0) = 1.0 / 3.0;
  m(1, 2) = -2.2250738585072014e-308;
  m(2, 1) = 98765432109876543.0;
  const auto path = temp_file("mat");
  tss::save_csv_matrix(path.string(), m);
  Eigen::MatrixXd back = tss::load_csv_matrix(path.string());
  CHECK((back - m).norm() == 0.0);
  std::filesystem::remove(path);

  Eigen::MatrixXd empty = tss::parse_csv_matrix("");
  CHECK(empty.rows() == 0);
}

TEST_CASE("csv vector roundtrip") {
  tss::GaussianSource rng(12);
  Eigen::VectorXd v = rng.vector(7);
  const auto path = temp_file("vec");
  tss::save_csv_vector(path.string(), v);
  Eigen::VectorXd back = tss::load_csv_vector(path.string());
  CHECK((back - v).norm() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("csv parse errors") {
  CHECK_THROWS_AS(tss::parse_csv_matrix("1,2\n3\n"), tss::ParseError);
  CHECK_THROWS_AS(tss::parse_csv_matrix("1,fish\n"), tss::ParseError);
  CHECK_THROWS_AS(tss::parse_csv_matrix("1,2\n3,4e\n"), tss::ParseError);
  CHECK(tss::parse_csv_matrix("1,2\r\n3,4\r\n")(1, 1) == 4.0);
}

TEST_CASE("tree description roundtrip") {
  RootedTree tree = oracle::two_star_tree();
  BlockLayout layout({1, 2, 3, 1, 2, 3, 1}, {3, 2, 1, 3, 2, 1, 3});
  const std::string text = tss::format_tree_json(tree, layout);
  tss::TreeDescription back = tss::parse_tree_json(text);
  CHECK(back.tree == tree);
  CHECK(back.layout.block_rows(3) == 3);
  CHECK(back.layout.block_cols(7) == 3);

  const auto path = temp_file("tree");
  tss::save_tree_json(path.string(), tree, layout);
  CHECK(tss::load_tree_json(path.string()).tree == tree);
  std::filesystem::remove(path);
}

TEST_CASE("tree description parse errors") {
  CHECK_THROWS_AS(tss::parse_tree_json("not json"), tss::ParseError);
  CHECK_THROWS_AS(tss::parse_tree_json("{}"), tss::ParseError);
  // duplicate node id
  CHECK_THROWS_AS(tss::parse_tree_json(R"({"nodes":[{"id":1,"m":1,"n":1},
      {"id":1,"m":1,"n":1}],"edges":[[1,2]],"root":2})"),
                  tss::ParseError);
  // edge endpoint out of range surfaces as a graph error
  CHECK_THROWS(tss::parse_tree_json(R"({"nodes":[{"id":1,"m":1,"n":1},
      {"id":2,"m":1,"n":1}],"edges":[[1,5]],"root":2})"));
}

TEST_CASE("tss json roundtrip preserves generators exactly") {
  std::mt19937_64 rng(14);
  RootedTree tree = oracle::random_prufer_tree(6, rng);
  BlockLayout layout(oracle::random_sizes(6, 1, 3, rng),
                     oracle::random_sizes(6, 1, 3, rng));
  RankProfile profile(tree, 0);
  for (const DirectedEdge& e : tree.directed_edges())
    profile.set(e, static_cast<int>(rng() % 3));
  TssMatrix t = tss::random_tss(tree, layout, profile, 15);

  const std::string text = tss::format_tss_json(t);
  TssMatrix back = tss::parse_tss_json(text);
  CHECK(back.tree() == tree);
  CHECK(back.profile() == profile);
  CHECK((back.to_dense().values() - t.to_dense().values()).norm() == 0.0);

  const auto path = temp_file("tss");
  tss::save_tss_json(path.string(), t);
  TssMatrix loaded = tss::load_tss_json(path.string());
  CHECK((loaded.to_dense().values() - t.to_dense().values()).norm() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("tss json rejects inconsistent payloads") {
  RootedTree tree = tss::line_tree(2);
  BlockLayout layout = BlockLayout::uniform(2, 1, 1);
  TssMatrix t = tss::random_tss(tree, layout, RankProfile(tree, 1), 16);
  std::string text = tss::format_tss_json(t);

  // corrupt the declared rank of one edge: generator shapes no longer match
  auto pos = text.find("\"rho\"");
  REQUIRE(pos != std::string::npos);
  pos = text.find('1', pos);
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad[pos] = '2';
  CHECK_THROWS(tss::parse_tss_json(bad));

  CHECK_THROWS_AS(tss::parse_tss_json("{\"tree\":3}"), tss::ParseError);
  CHECK_THROWS_AS(tss::parse_tss_json("[["), tss::ParseError);
}

TEST_CASE("missing file raises an error") {
  CHECK_THROWS_AS(tss::load_csv_matrix("/nonexistent/path/x.csv"), tss::Error);
  CHECK_THROWS_AS(tss::load_tss_json("/nonexistent/path/x.json"), tss::Error);
}

}  // TEST_SUITE
