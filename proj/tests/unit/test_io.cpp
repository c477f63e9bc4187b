#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dseq/difference.hpp"
#include "dseq/io.hpp"

using namespace dseq;
using dseq::io::Json;

namespace {

void expect_same_values(const DoubleSequence& a, const DoubleSequence& b, Index side = 9) {
  for (Index m = 0; m <= side; ++m)
    for (Index n = 0; n <= side; ++n) ASSERT_EQ(a.at(m, n), b.at(m, n)) << m << "," << n;
}

void expect_same_entries(const FourDimMatrix& a, const FourDimMatrix& b, Index side = 5) {
  for (Index m = 0; m <= side; ++m)
    for (Index n = 0; n <= side; ++n)
      for (Index k = 0; k <= side; ++k)
        for (Index l = 0; l <= side; ++l) ASSERT_EQ(a.entry(m, n, k, l), b.entry(m, n, k, l));
}

DoubleSequence round_trip(const DoubleSequence& x) {
  return io::sequence_from_json(Json::parse(io::sequence_to_json(x).dump()));
}

FourDimMatrix round_trip(const FourDimMatrix& a) {
  return io::matrix_from_json(Json::parse(io::matrix_to_json(a).dump()));
}

}  // namespace

TEST(SequenceJson, ClosedForm) {
  auto x = io::sequence_from_json(Json::parse(R"({"kind":"closed_form","name":"geometric","params":{"rho":0.25}})"));
  EXPECT_EQ(x.at(1, 2), 0.25 * 0.25 * 0.25);
  expect_same_values(round_trip(x), x);
  auto y = io::sequence_from_json(Json::parse(R"({"kind":"closed_form","name":"product"})"));
  EXPECT_TRUE(y.exact());
}

TEST(SequenceJson, Table) {
  auto x = io::sequence_from_json(Json::parse(R"({"kind":"table","values":[[1,2],[3,4]],"default":0.5})"));
  EXPECT_EQ(x.at(1, 0), 3.0);
  EXPECT_EQ(x.at(9, 9), 0.5);
  expect_same_values(round_trip(x), x);
}

TEST(SequenceJson, CombinatorTree) {
  auto x = mask_from(scale(delta(add(catalog("product"), catalog("boos"))), 2.0), 1, 0);
  auto back = round_trip(x);
  expect_same_values(back, x);
  EXPECT_EQ(io::sequence_to_json(back).dump(), io::sequence_to_json(x).dump());
  auto j = Json::parse(R"({"kind":"combinator","op":"inv_delta","children":[{"kind":"closed_form","name":"unit","params":{"i0":1,"j0":1}}]})");
  auto s = io::sequence_from_json(j);
  EXPECT_EQ(s.at(0, 5), 0.0);
  EXPECT_EQ(s.at(3, 5), 1.0);
}

TEST(SequenceJson, Errors) {
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"name":"product"})")), InvalidArgument);
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"kind":"spline"})")), InvalidArgument);
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"kind":"table","values":[[1],[2,3]]})")), InvalidArgument);
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"kind":"table","values":[["a"]]})")), InvalidArgument);
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"kind":"closed_form","name":"product","extra":1})")),
               InvalidArgument);
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"kind":"combinator","op":"frob","children":[]})")),
               InvalidArgument);
  EXPECT_THROW(io::sequence_from_json(Json::parse(R"({"kind":"closed_form","name":"nope"})")), UnknownCatalogEntry);
}

TEST(MatrixJson, AllKinds) {
  auto e = io::matrix_from_json(Json::parse(R"({"kind":"entries","entries":[[0,0,0,0,1.5],[1,2,0,1,-2]]})"));
  EXPECT_EQ(e.entry(1, 2, 0, 1), -2.0);
  expect_same_entries(round_trip(e), e);

  auto d = io::matrix_from_json(Json::parse(R"({"kind":"builtin","name":"delta"})"));
  expect_same_entries(d, builtin_matrix("delta"));
  expect_same_entries(round_trip(d), d);

  auto band = io::matrix_from_json(Json::parse(R"({"kind":"builtin","name":"sigma_band","params":{"width":2}})"));
  expect_same_entries(round_trip(band), band);

  auto b = io::matrix_from_json(Json::parse(
      R"({"kind":"b_matrix","a":{"kind":"table","values":[[1,2],[3,4]]},"window":[4,4]})"));
  EXPECT_EQ(b.entry(1, 1, 0, 0), 10.0);
  expect_same_entries(round_trip(b), b);

  auto f = io::matrix_from_json(Json::parse(R"({"kind":"e_to_f","of":{"kind":"builtin","name":"identity"}})"));
  expect_same_entries(f, builtin_matrix("delta"));
  expect_same_entries(round_trip(f), f);

  auto t = io::matrix_from_json(
      Json::parse(R"({"kind":"tail_sum","of":{"kind":"builtin","name":"delta"},"window":[8,8]})"));
  expect_same_entries(t, builtin_matrix("identity"));
  expect_same_entries(round_trip(t), t);
}

TEST(MatrixJson, Errors) {
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"kind":"entries","entries":[[0,0,0,1]]})")), InvalidArgument);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"kind":"entries","entries":[[0,0,0.5,1,1]]})")), InvalidArgument);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"kind":"b_matrix","a":{"kind":"closed_form","name":"product"}})")),
               InvalidArgument);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"kind":"builtin","name":"nope"})")), UnknownCatalogEntry);
}

TEST(ConfigJson, OverridesAndValidation) {
  auto cfg = io::config_from_json(Json::parse(R"({"tol":1e-4,"schedule":[4,8,16],"prefix_P":3})"));
  EXPECT_EQ(cfg.tol, 1e-4);
  EXPECT_EQ(cfg.schedule_sides, (std::vector<Index>{4, 8, 16}));
  EXPECT_EQ(cfg.prefix_p, 3);
  EXPECT_EQ(cfg.fringe, RunConfig{}.fringe);
  EXPECT_THROW(io::config_from_json(Json::parse(R"({"tolerance":1})")), InvalidArgument);
  EXPECT_THROW(io::config_from_json(Json::parse(R"({"tol":-1})")), InvalidArgument);
  EXPECT_THROW(io::config_from_json(Json::parse(R"({"schedule":[8,4]})")), InvalidArgument);
  EXPECT_THROW(io::config_from_json(Json::parse(R"({"cell_cap":0})")), InvalidArgument);
  auto back = io::config_from_json(Json::parse(io::config_to_json(cfg).dump()));
  EXPECT_EQ(back.schedule_sides, cfg.schedule_sides);
  EXPECT_EQ(back.tol, cfg.tol);
}

TEST(Parse, MalformedInputIsInvalidArgument) {
  EXPECT_THROW(io::parse("{oops", "--seq"), InvalidArgument);
  EXPECT_NO_THROW(io::parse("[1,2]", "--seq"));
}

TEST(ReadArgument, AtPathReadsFile) {
  auto path = std::filesystem::temp_directory_path() / "dseq_io_test.json";
  {
    std::ofstream f(path);
    f << R"({"kind":"closed_form","name":"boos"})";
  }
  EXPECT_EQ(io::read_argument("@" + path.string()), R"({"kind":"closed_form","name":"boos"})");
  EXPECT_EQ(io::read_argument("{}"), "{}");
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_argument("@" + path.string()), InvalidArgument);
}

TEST(Reports, ConvergenceReportShape) {
  auto rep = p_limit(catalog("product"), RunConfig{}.schedule());
  auto j = io::to_json(rep);
  EXPECT_EQ(j["verdict"], "unbounded");
  EXPECT_TRUE(j["limit"].is_null());
  EXPECT_FALSE(j["witness"].is_null());
  EXPECT_EQ(j["evidence"].size(), rep.evidence.size());
  auto ok = io::to_json(p_limit(catalog("constant", {{"c", 2}}), RunConfig{}.schedule()));
  EXPECT_EQ(ok["limit"], 2.0);
}

TEST(Reports, TableJsonUsesIntegersOnExactPath) {
  auto j = io::table_json(catalog("product"), Window(2, 2), kDefaultCellCap);
  EXPECT_TRUE(j[2][2].is_number_integer());
  EXPECT_EQ(j[2][2], 4);
  auto g = io::table_json(catalog("geometric", {{"rho", 0.5}}), Window(1, 1), kDefaultCellCap);
  EXPECT_TRUE(g[1][1].is_number_float());
}

TEST(Reports, DeterministicDump) {
  auto a = io::to_json(r_limit(catalog("boos"), RunConfig{}.schedule())).dump();
  auto b = io::to_json(r_limit(catalog("boos"), RunConfig{}.schedule())).dump();
  EXPECT_EQ(a, b);
}
