#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "msdp/adc.hpp"
#include "msdp/core.hpp"
#include "msdp/generator.hpp"
#include "msdp/rng.hpp"
#include "oracles.hpp"

using namespace msdp;
using testing_util::table;

TEST(Alphabet, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(Alphabet(std::vector<std::int64_t>{}), InvalidInstanceError);
  EXPECT_THROW(Alphabet(std::vector<std::int64_t>{1, 2, 1}), InvalidInstanceError);
  const Alphabet a = Alphabet::Range(1, 4);
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(a.value(2), 3);
  EXPECT_EQ(a.index_of(4), 3);
  EXPECT_FALSE(a.index_of(9).has_value());
  EXPECT_FALSE(a.contains(4));
  EXPECT_EQ(Alphabet({7, 8}, {"a", "b"}).label(1), "b");
}

TEST(EvaluateObjective, SingleStageIdentity) {
  ProblemH p = table({{0, 1, 2}});
  Assignment a{{2}, std::nullopt};
  EXPECT_EQ(evaluate_objective(p, a), 2.0);
  ASSERT_TRUE(a.objective.has_value());
  EXPECT_EQ(*a.objective, 2.0);
}

TEST(EvaluateObjective, ZeroWeights) {
  ProblemH p = table({{1, 5}, {3, 2}, {4, 4}}, {0, 0, 0});
  oracle::for_each_vector(3, 2, [&](const std::vector<Symbol>& x) {
    EXPECT_EQ(evaluate_objective(p, Prefix(x)), 0.0);
  });
}

TEST(EvaluateObjective, RejectsBadAssignments) {
  ProblemH p = table({{1, 5}, {3, 2}});
  const std::vector<Symbol> shorter{0};
  const std::vector<Symbol> outside{0, 2};
  EXPECT_THROW(evaluate_objective(p, Prefix(shorter)), InvalidAssignmentError);
  EXPECT_THROW(evaluate_objective(p, Prefix(outside)), InvalidAssignmentError);
}

TEST(EvaluateObjective, AdcReferenceVectorMatchesDirectSum) {
  const AdcInstance inst = bundled_adc_instance();
  const ProblemH p = adc_problem(inst);
  const std::vector<std::int64_t> bits{4, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1};
  std::vector<Symbol> x;
  for (auto v : bits) x.push_back(*p.alphabet.index_of(v));
  double direct = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    direct += inst.a[i] * inst.a[i] /
              (inst.b[i] * inst.b[i] + inst.d[i] * std::exp2(bits[i]));
  EXPECT_NEAR(evaluate_objective(p, Prefix(x)), direct, 1e-12 * std::abs(direct));
}

TEST(Extend, FirstExtensionAndConstantReward) {
  ProblemH p = table({{1, 1}, {1, 1}, {1, 1}, {1, 1}}, {1, 1, 1, 1});
  PartialAssignment pa;
  pa = extend(pa, 1, p);
  EXPECT_EQ(pa.prefix, std::vector<Symbol>{1});
  EXPECT_EQ(pa.stage(), 1u);
  EXPECT_EQ(pa.lambda, 1.0);
  for (int k = 0; k < 3; ++k) pa = extend(pa, 0, p);
  EXPECT_EQ(pa.lambda, 4.0);
  EXPECT_THROW(extend(pa, 0, p), StageOverflowError);
  EXPECT_THROW(extend(PartialAssignment{}, 5, p), InvalidAssignmentError);
}

TEST(Extend, LambdaMatchesFreshSumOnRandomInstances) {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ProblemH p = table_problem(
        random_table_instance(6, 4, ConstraintFamily::kNone, seed));
    PartialAssignment pa;
    std::vector<Symbol> x;
    for (std::size_t i = 0; i < p.stages; ++i) {
      const auto s = static_cast<Symbol>(rng.below(p.symbols()));
      pa = extend(pa, s, p);
      x.push_back(s);
      const double fresh = oracle::objective(p, x);
      EXPECT_NEAR(pa.lambda, fresh, 1e-12 * std::max(1.0, std::abs(fresh)));
      EXPECT_EQ(pa.stage(), x.size());
    }
    EXPECT_EQ(pa.lambda, evaluate_objective(p, Prefix(x)));
  }
}

TEST(CsfOracle, MissingPartialCheckIsUnknown) {
  CsfOracle c;
  c.full = [](Prefix) { return true; };
  const std::vector<Symbol> x{0};
  EXPECT_EQ(c.check_partial(Prefix(x)), Feasibility::kUnknown);
  EXPECT_STREQ(to_string(Feasibility::kInfeasible), "infeasible");
}

// Partial checks must never contradict brute-force completability, and must
// agree with the full check on full vectors.
TEST(CsfOracle, PartialCheckSoundOnTableFamilies) {
  for (auto family : {ConstraintFamily::kBudget, ConstraintFamily::kOrdering,
                      ConstraintFamily::kPermutation, ConstraintFamily::kMixed,
                      ConstraintFamily::kBlackbox}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const ProblemH p =
          table_problem(random_table_instance(4, 3, family, seed));
      for (std::size_t m = 1; m <= p.stages; ++m)
        oracle::for_each_vector(m, p.symbols(), [&](const std::vector<Symbol>& x) {
          const Feasibility v = p.csf.check_partial(Prefix(x));
          if (v == Feasibility::kUnknown) return;
          EXPECT_EQ(v == Feasibility::kFeasible, oracle::completable(p, x))
              << to_string(family) << " seed " << seed;
          if (m == p.stages)
            EXPECT_EQ(v == Feasibility::kFeasible, p.csf.full(Prefix(x)));
        });
    }
  }
}

TEST(Counters, TotalIsSum) {
  Counters a{3, 4};
  a += Counters{1, 2};
  EXPECT_EQ(a.csf_evals, 4u);
  EXPECT_EQ(a.acms_ops, 6u);
  EXPECT_EQ(a.total(), 10u);
}

TEST(ProblemH, ValidateCatchesMalformedInstances) {
  ProblemH p = table({{1, 2}, {3, 4}});
  EXPECT_NO_THROW(p.validate());
  p.weights = {1.0};
  EXPECT_THROW(p.validate(), InvalidInstanceError);
  p = table({{1, 2}});
  p.csf.full = nullptr;
  EXPECT_THROW(p.validate(), InvalidInstanceError);
  p = table({{1, 2}});
  p.stages = 0;
  EXPECT_THROW(p.validate(), InvalidInstanceError);
}
