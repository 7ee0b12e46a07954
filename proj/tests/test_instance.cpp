#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "msdp/baselines.hpp"
#include "msdp/generator.hpp"
#include "msdp/instance.hpp"
#include "msdp/solver.hpp"
#include "oracles.hpp"

using namespace msdp;

namespace {

const char* kTable = R"({
  "N": 3,
  "alphabet": [10, 20],
  "b": [1, 2, 0.5],
  "phi": {"table": [[1, 2], [3, 1], [0, 4]]},
  "constraints": {
    "budget": {"weights": [[1, 2], [1, 2], [1, 2]], "capacity": 5},
    "ordering": "nonincreasing"
  }
})";

std::string parse_error_field(const std::string& text) {
  try {
    parse_instance_text(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(Instance, ParsesTable) {
  const InstanceSpec spec = parse_instance_text(kTable);
  const auto& t = std::get<TableInstance>(spec);
  EXPECT_EQ(t.alphabet, (std::vector<std::int64_t>{10, 20}));
  ASSERT_TRUE(t.budget);
  EXPECT_EQ(t.budget->capacity, 5.0);
  EXPECT_EQ(t.ordering, TableInstance::Ordering::kNonIncreasing);
  const ProblemH p = to_problem(spec);
  const auto truth = oracle::brute_optimum(p);
  ASSERT_TRUE(truth);
  EXPECT_EQ(*msdp_solve(p).best.objective, truth->value);
}

TEST(Instance, ErrorsNameTheField) {
  EXPECT_EQ(parse_error_field(R"({"N": 2, "alphabet": [0], "b": [1], "phi": {"table": [[1]]}})"),
            "b");
  EXPECT_EQ(parse_error_field(R"({"N": 1, "alphabet": [0], "b": [1], "phi": {"table": [["x"]]}})"),
            "phi.table[0][0]");
  EXPECT_EQ(parse_error_field(R"({"N": 1, "alphabet": [0], "b": [1], "phi": {"table": [[1]]},
      "constraints": {"ordering": "sideways"}})"),
            "constraints.ordering");
  EXPECT_EQ(parse_error_field(R"({"phi": {"adapter": "adc", "params": {"a": [1], "b": [1], "d": [-0.1]}}})"),
            "phi.params.Pt");
  EXPECT_EQ(parse_error_field(R"({"phi": {"adapter": "dfa", "params": {"fragments": ["ACGZ"]}}})"),
            "phi.params.fragments");
  EXPECT_EQ(parse_error_field(R"({"phi": {"adapter": "nope"}})"), "phi.adapter");
  EXPECT_EQ(parse_error_field("[1, 2]"), "");
}

TEST(Instance, SyntaxErrorReportsLine) {
  try {
    parse_instance_text("{\n  \"N\": 1,\n  oops\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Instance, AdapterHeaderMustMatch) {
  InstanceSpec adc = random_adc_instance(4, 20, 1);
  auto j = instance_to_json(adc);
  j["N"] = 5;
  EXPECT_THROW(parse_instance(j), ParseError);
}

TEST(Instance, RoundTripEveryKind) {
  std::vector<InstanceSpec> specs;
  for (auto family : {ConstraintFamily::kNone, ConstraintFamily::kBudget,
                      ConstraintFamily::kOrdering, ConstraintFamily::kPermutation,
                      ConstraintFamily::kBlackbox, ConstraintFamily::kMixed})
    specs.emplace_back(random_table_instance(4, 3, family, 7));
  specs.emplace_back(random_adc_instance(12, 48, 1));
  specs.emplace_back(random_dfa_instance(6, 8, 3, true));
  specs.emplace_back(CmdpSpec{random_cmdp(3, 2, 3, 5), {}});
  specs.emplace_back(CmdpSpec{random_cmdp(2, 2, 2, 5, false), {{0, 1}, {1, 1}}});
  for (const auto& s : specs) {
    const std::string text = dump_instance(s);
    const InstanceSpec back = parse_instance_text(text);
    EXPECT_EQ(back, s) << text;
    EXPECT_EQ(dump_instance(back), text);
  }
}

TEST(Instance, RoundTripPreservesSolutions) {
  const InstanceSpec s = random_table_instance(5, 3, ConstraintFamily::kMixed, 12);
  const InstanceSpec back = parse_instance_text(dump_instance(s));
  const ProblemH a = to_problem(s), b = to_problem(back);
  try {
    EXPECT_EQ(exhaustive_search(a).best, exhaustive_search(b).best);
  } catch (const InfeasibleError&) {
    EXPECT_THROW(exhaustive_search(b), InfeasibleError);
  }
}

TEST(Instance, LoadsFastaRelativeToFile) {
  const auto dir = std::filesystem::temp_directory_path() / "msdp_fasta_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "frags.fa") << ">a\nACGTAC\n>b\nGTACGG\n";
  std::ofstream(dir / "inst.json")
      << R"({"phi": {"adapter": "dfa", "params": {"fasta": "frags.fa"}}})";
  const InstanceSpec s = load_instance(dir / "inst.json");
  EXPECT_EQ(std::get<DfaInstance>(s).fragments,
            (std::vector<std::string>{"ACGTAC", "GTACGG"}));
  std::filesystem::remove_all(dir);
}

TEST(Generator, ByteIdenticalAcrossCalls) {
  EXPECT_EQ(dump_instance(random_table_instance(4, 3, ConstraintFamily::kBudget, 7)),
            dump_instance(random_table_instance(4, 3, ConstraintFamily::kBudget, 7)));
  EXPECT_NE(dump_instance(random_table_instance(4, 3, ConstraintFamily::kBudget, 7)),
            dump_instance(random_table_instance(4, 3, ConstraintFamily::kBudget, 8)));
}

TEST(Generator, FamiliesParse) {
  EXPECT_EQ(parse_family("mixed"), ConstraintFamily::kMixed);
  EXPECT_FALSE(parse_family("other").has_value());
  EXPECT_STREQ(to_string(ConstraintFamily::kBlackbox), "blackbox");
}

TEST(Generator, PermutationForcesSquare) {
  const TableInstance t = random_table_instance(4, 2, ConstraintFamily::kPermutation, 1);
  EXPECT_EQ(t.alphabet.size(), 4u);
  EXPECT_EQ(t.structure, Structure::kPermutation);
}

TEST(Generator, CmdpBudgetIsAttainable) {
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_TRUE(oracle::cmdp_optimum(random_cmdp(2, 2, 3, seed)).has_value());
}

TEST(Generator, WitnessIsGenuine) {
  const auto w = find_single_survivor_witness(1);
  ASSERT_TRUE(w);
  const ProblemH p = table_problem(w->instance);
  EXPECT_LE(p.stages, 4u);
  EXPECT_LE(p.symbols(), 3u);
  const auto truth = oracle::brute_optimum(p);
  ASSERT_TRUE(truth);
  EXPECT_EQ(w->optimum, truth->value);
  EXPECT_LT(w->single_survivor_value, truth->value);
  EXPECT_FALSE(find_single_survivor_witness(1, 0).has_value());
}
