#include <gtest/gtest.h>

#include <sstream>

#include "negtype/io.hpp"
#include "negtype/serialize.hpp"

using namespace negtype;

TEST(MatrixCsv, ReadsPlainAndHeader) {
  std::istringstream plain("0,1,2\n1,0,1\n2,1,0\n");
  auto x = read_matrix_csv(plain);
  EXPECT_EQ(x.size(), 3u);
  EXPECT_EQ(x(0, 2), 2.0);
  EXPECT_TRUE(x.labels().empty());

  std::istringstream header("a, b ,c\n0,1,2\n1,0,1\n\n2,1,0\n");
  auto y = read_matrix_csv(header);
  EXPECT_EQ(y.labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(y.matrix(), x.matrix());
}

TEST(MatrixCsv, Errors) {
  std::istringstream ragged("0,1\n1,0,3\n");
  EXPECT_THROW(read_matrix_csv(ragged), Error);
  std::istringstream asym("0,1\n2,0\n");
  try {
    read_matrix_csv(asym);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AsymmetricMatrix);
  }
  std::istringstream junk("0,1\n1,x\n");
  EXPECT_THROW(read_matrix_csv(junk), Error);
}

TEST(MatrixCsv, WriteReadIsExact) {
  auto x = gen_random_semimetric(6, 42, 0.1, 9.0);
  std::stringstream ss;
  write_matrix_csv(ss, x);
  EXPECT_EQ(read_matrix_csv(ss).matrix(), x.matrix());
}

TEST(TreeFile, ParsesEdgeList) {
  std::istringstream in("# a star\n0 1 1\n0 2 1.5\n\n0 3 2  # trailing\n");
  auto e = read_tree_edges(in);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[1], (TreeEdge{0, 2, 1.5}));
  std::istringstream cyc("0 1 1\n1 2 1\n2 0 1\n");
  EXPECT_THROW(read_tree_edges(cyc), Error);
  std::istringstream bad("0 1\n");
  EXPECT_THROW(read_tree_edges(bad), Error);
}

TEST(SpaceJson, ShapeAndRoundTrip) {
  auto x = gen_star(3, 1);
  auto j = to_json(x);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["dist"][1][2], 2.0);
  EXPECT_TRUE(j["labels"].is_array());
  const auto text = j.dump();
  EXPECT_EQ(to_json(space_from_json(json::parse(text))).dump(), text);
  EXPECT_THROW(space_from_json(json::parse(R"({"n":2,"dist":[[0,1],[2,0]]})")), Error);
}
