#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ccx/bounds.hpp"
#include "ccx/classical.hpp"
#include "ccx/errors.hpp"
#include "oracles/pif_oracles.hpp"

namespace ccx {
namespace {

SetIncParams esetinc(int n, int a, int b, int c2, int g2, bool bar = false) {
  SetIncParams p;
  p.n = n;
  p.a = a;
  p.b = b;
  p.c2 = c2;
  p.g2 = g2;
  p.variant = SetIncVariant::kESetInc;
  p.bar = bar;
  return p;
}

bool valid(const SetIncParams& p) {
  try {
    validate(p);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

// Every valid ESetInc instance with the given n.
std::vector<SetIncParams> instances(int n) {
  std::vector<SetIncParams> out;
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      for (int c2 = 0; c2 <= 2 * n; ++c2)
        for (int g2 = 1; g2 <= 2 * n; ++g2) {
          const SetIncParams p = esetinc(n, a, b, c2, g2);
          if (valid(p)) out.push_back(p);
        }
  return out;
}

std::vector<BitString> weight_strings(int n, int w) {
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
    if (__builtin_popcountll(v) == w) out.push_back(bits_of_index(v, n));
  return out;
}

// Smallest |2k-n+1| over defined flips, scanning from both ends.
int transition_scan(const std::vector<Value>& d) {
  const int n = static_cast<int>(d.size()) - 1;
  int best = -1;
  for (int k = n - 1; k >= 0; --k) {
    if (d[k] == Value::kUndefined || d[k + 1] == Value::kUndefined || d[k] == d[k + 1]) continue;
    const int gamma = 2 * k - n + 1 < 0 ? n - 1 - 2 * k : 2 * k - n + 1;
    if (best < 0 || gamma <= best) best = gamma;
  }
  return best;
}

// ---- Paturi ----

TEST(Paturi, FklExample) {
  const PaturiResult r = paturi_gamma(fkl_slice(6, 5));
  EXPECT_EQ(r.gamma, 1);
  EXPECT_EQ(r.transition, 2);
  EXPECT_DOUBLE_EQ(r.adeg_value, std::sqrt(30.0));
}

TEST(Paturi, ThresholdAndOr) {
  std::vector<Value> mid(9, Value::kMinus);
  for (int k = 4; k <= 8; ++k) mid[k] = Value::kPlus;
  EXPECT_EQ(paturi_gamma(mid).gamma, 1);
  std::vector<Value> orf(9, Value::kPlus);
  orf[0] = Value::kMinus;
  const PaturiResult r = paturi_gamma(orf);
  EXPECT_EQ(r.gamma, 7);
  EXPECT_DOUBLE_EQ(r.adeg_value, std::sqrt(8.0));
}

TEST(Paturi, NoTransitionThrows) {
  EXPECT_THROW(paturi_gamma(std::vector<Value>(5, Value::kPlus)), NoTransition);
  EXPECT_THROW(paturi_gamma({Value::kMinus, Value::kUndefined, Value::kPlus}), NoTransition);
}

TEST(Paturi, FklGammaIsKMinusTwoL) {
  for (int k = 1; k <= 20; ++k) {
    for (int l2 = 1; l2 <= k; l2 += 2) {
      const auto d = fkl_slice(k, l2);
      ASSERT_EQ(paturi_gamma(d).gamma, k - l2) << k << " " << l2;
      ASSERT_EQ(transition_scan(d), k - l2);
    }
  }
}

TEST(Paturi, FklSlice) {
  const auto d = fkl_slice(4, 3);
  EXPECT_EQ(d[1], Value::kMinus);
  EXPECT_EQ(d[2], Value::kPlus);
  EXPECT_EQ(d[0], Value::kUndefined);
  const auto e = fkl_slice(2, 1);
  EXPECT_EQ(e[0], Value::kMinus);
  EXPECT_EQ(e[1], Value::kPlus);
  EXPECT_THROW(fkl_slice(4, 5), InputError);
  EXPECT_THROW(fkl_slice(4, 2), InputError);
}

TEST(Paturi, RandomPredicatesAgreeWithScan) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 15);
    std::vector<Value> d(n + 1);
    for (auto& v : d) v = static_cast<Value>(static_cast<int>(rng() % 3) - 1);
    const int scan = transition_scan(d);
    if (scan < 0) {
      EXPECT_THROW(paturi_gamma(d), NoTransition);
    } else {
      EXPECT_EQ(paturi_gamma(d).gamma, scan);
    }
  }
}

// ---- pattern matrix ----

TEST(PatternMatrix, DimensionsAndConstant) {
  const PartialMatrix m = pattern_matrix(4, 2, std::vector<Value>(4, Value::kPlus));
  EXPECT_EQ(m.rows, 16U);
  EXPECT_EQ(m.cols, 16U);
  for (auto e : m.entries) EXPECT_EQ(e, 1);
  EXPECT_THROW(pattern_matrix(5, 2, std::vector<Value>(4, Value::kPlus)), InputError);
  EXPECT_THROW(pattern_matrix(2, 2, std::vector<Value>(4, Value::kPlus)), InputError);
  EXPECT_THROW(pattern_matrix(22, 2, std::vector<Value>(4, Value::kPlus)), InputError);
}

TEST(PatternMatrix, EntriesReadTheProjection) {
  // n = 4, t = 2, f = parity of the two selected bits.
  std::vector<Value> parity(4);
  for (int v = 0; v < 4; ++v) parity[v] = __builtin_popcount(v) % 2 ? Value::kMinus : Value::kPlus;
  const PartialMatrix m = pattern_matrix(4, 2, parity);
  for (std::uint64_t x = 0; x < 16; ++x) {
    for (int o0 = 0; o0 < 2; ++o0) {
      for (int o1 = 0; o1 < 2; ++o1) {
        for (int w = 0; w < 4; ++w) {
          const int bit0 = static_cast<int>((x >> o0) & 1) ^ (w & 1);
          const int bit1 = static_cast<int>((x >> (2 + o1)) & 1) ^ (w >> 1);
          const Value expect = (bit0 ^ bit1) ? Value::kMinus : Value::kPlus;
          ASSERT_EQ(m.at(x, ((o0 + 2 * o1) << 2) + w), expect);
        }
      }
    }
  }
}

TEST(PatternMatrix, SubmatrixOfExactSetInclusion) {
  for (int k : {2, 3}) {
    for (int l2 = 1; l2 <= k; l2 += 2) {
      const PartialMatrix pm = pattern_matrix(2 * k, k, symmetric_truth_table(fkl_slice(k, l2)));
      // The pattern matrix puts -1 at l-1/2, the barred orientation.
      const SetIncParams target = esetinc(4 * k, 2 * k, k, l2, 1, true);
      int defined_entries = 0;
      for (std::uint64_t r = 0; r < pm.rows; ++r) {
        for (std::uint64_t c = 0; c < pm.cols; ++c) {
          const BitPair p = pattern_embedded_pair(k, r, c);
          ASSERT_EQ(weight(p.x), 2 * k);
          ASSERT_EQ(weight(p.y), k);
          if (!defined(pm.at(r, c))) continue;
          ++defined_entries;
          ASSERT_EQ(pm.at(r, c), setinc_value(target, and_weight(p.x, p.y))) << k << " " << l2;
        }
      }
      EXPECT_GT(defined_entries, 0);
    }
  }
}

// ---- reduction transforms ----

TEST(Reduction, PadExample) {
  const SetIncParams src = esetinc(4, 2, 2, 2, 2);
  StepArgs args;
  args.pad = {1, 1, 0, 2};
  const TransformResult r = reduction_transform(StepKind::kPad, src, args);
  EXPECT_EQ(r.params, esetinc(6, 3, 3, 2, 2));
  for (const auto& x : weight_strings(4, 2)) {
    for (const auto& y : weight_strings(4, 2)) {
      const Value v = setinc_value(src, and_weight(x, y));
      if (!defined(v)) continue;
      const BitPair t = *reduction_transform(StepKind::kPad, src, args, BitPair{x, y}).inputs;
      EXPECT_EQ(t.x, concat(x, parse_bits("10")));
      EXPECT_EQ(t.y, concat(y, parse_bits("01")));
      EXPECT_EQ(setinc_value(r.params, and_weight(t.x, t.y)), v);
    }
  }
}

TEST(Reduction, ComplementBobExample) {
  const SetIncParams src = esetinc(4, 2, 2, 2, 2);
  const TransformResult r = reduction_transform(StepKind::kComplementBob, src, {});
  EXPECT_EQ(r.params.a, 2);
  EXPECT_EQ(r.params.b, 2);
  EXPECT_EQ(r.params.c2, 2);
  EXPECT_TRUE(r.params.bar);
  for (const auto& x : weight_strings(4, 2)) {
    for (const auto& y : weight_strings(4, 2)) {
      const Value v = setinc_value(src, and_weight(x, y));
      if (!defined(v)) continue;
      EXPECT_EQ(setinc_value(r.params, and_weight(x, complement(y))), v);
    }
  }
}

TEST(Reduction, RepeatDoublesWeights) {
  StepArgs args;
  args.repeat = 2;
  const TransformResult r =
      reduction_transform(StepKind::kRepeat, esetinc(4, 2, 2, 2, 2), args, BitPair{parse_bits("1100"), parse_bits("1010")});
  EXPECT_EQ(r.params, esetinc(8, 4, 4, 4, 4));
  EXPECT_EQ(r.inputs->x, parse_bits("11001100"));
}

TEST(Reduction, BadPadThrows) {
  StepArgs args;
  args.pad = {2, 1, 0, 2};
  EXPECT_THROW(reduction_transform(StepKind::kPad, esetinc(4, 2, 2, 2, 2), args), InputError);
  args.pad = {-1, 0, 0, 2};
  EXPECT_THROW(reduction_transform(StepKind::kPad, esetinc(4, 2, 2, 2, 2), args), InputError);
}

// ---- certificates ----

TEST(Certificate, CaseThreeExample) {
  const Certificate c = esetinc_lower_certificate(esetinc(16, 8, 8, 8, 2));
  EXPECT_EQ(c.case_id, 3);
  EXPECT_EQ(c.n1_2, 8);
  EXPECT_EQ(c.n2_2, 8);
  EXPECT_EQ(c.m1_2, 3);
  EXPECT_EQ(c.m2_2, 3);
  const ReductionStep& last = c.steps.back();
  EXPECT_EQ(last.args.pad, (PadLengths{0, 1, 1, 2}));
  EXPECT_EQ(c.terminal_k, 1);
  EXPECT_EQ(c.terminal_l2, 1);
  EXPECT_EQ(c.terminal, esetinc(4, 2, 1, 1, 1));
  EXPECT_NEAR(c.terminal_value, std::sqrt(0.5), 1e-12);
  EXPECT_DOUBLE_EQ(c.reported_bound, 4.0);
}

TEST(Certificate, CaseOneExample) {
  const Certificate c = esetinc_lower_certificate(esetinc(4, 2, 2, 2, 2));
  EXPECT_EQ(c.case_id, 1);
  EXPECT_DOUBLE_EQ(c.reported_bound, 1.0);
  EXPECT_EQ(c.terminal, esetinc(2, 1, 1, 1, 1));
}

TEST(Certificate, CaseTwoExample) {
  // n1 = 1, n2 = 5, g = 1: m1 = 1/2, m2 = 5/2.
  const Certificate c = esetinc_lower_certificate(esetinc(16, 6, 6, 2, 2));
  EXPECT_EQ(c.case_id, 2);
  EXPECT_EQ(c.terminal_l2, 1);
  EXPECT_EQ(c.terminal_k, 1);
  EXPECT_DOUBLE_EQ(c.reported_bound, std::sqrt(5.0));
}

TEST(Certificate, SideConditionsHoldUpToTwentyFour) {
  int count = 0;
  for (int n = 2; n <= 24; ++n) {
    for (const SetIncParams& p : instances(n)) {
      const Certificate c = esetinc_lower_certificate(p);
      for (const SideCondition& sc : all_side_conditions(c)) ASSERT_TRUE(sc.holds()) << sc.name << describe(p);
      if (c.case_id != 1) {
        ASSERT_EQ(c.terminal_l2 % 2, 1);
        ASSERT_GT(c.terminal_l2, 0);
        ASSERT_LE(c.terminal_l2, c.terminal_k);
      }
      ++count;
    }
  }
  EXPECT_GT(count, 10000);
}

TEST(Certificate, CaseFormulasOnNormalizedInstances) {
  for (int n1_2 = 1; n1_2 <= 120; ++n1_2) {
    for (int n2_2 = n1_2; n1_2 + 3 * n2_2 <= 120; ++n2_2) {
      if ((n2_2 - n1_2) % 2) continue;
      for (int g2 = 1; g2 <= n1_2; ++g2) {
        if ((n1_2 - g2) % 2) continue;
        const SetIncParams p = esetinc((n1_2 + 3 * n2_2) / 2, (n1_2 + n2_2) / 2, (n1_2 + n2_2) / 2, n1_2, g2);
        if (!valid(p)) continue;
        const Certificate c = esetinc_lower_certificate(p);
        ASSERT_LE(c.m1_2, c.m2_2);
        if (c.case_id == 3) {
          const int m = c.terminal_k;
          const int k2 = c.terminal_l2;
          ASSERT_LE(k2, m);                            // k <= m/2
          ASSERT_GE(c.m2_2 - k2 - 2 * m, 0);           // l - (l1+l2+l3) = m2 - k - m >= 0
        }
      }
    }
  }
}

TEST(Certificate, StepsPreserveValuesUpToEight) {
  for (int n = 2; n <= 8; ++n) {
    for (const SetIncParams& p : instances(n)) {
      const Certificate c = esetinc_lower_certificate(p);
      for (const ReductionStep& s : c.steps) {
        const SetIncParams& to = s.to;
        for (const auto& x : weight_strings(to.n, to.a)) {
          for (const auto& y : weight_strings(to.n, to.b)) {
            const Value v = setinc_value(to, and_weight(x, y));
            if (!defined(v)) continue;
            const TransformResult t = reduction_transform(s.kind, to, s.args, BitPair{x, y});
            ASSERT_EQ(t.params, s.from);
            ASSERT_EQ(weight(t.inputs->x), s.from.a);
            ASSERT_EQ(weight(t.inputs->y), s.from.b);
            ASSERT_EQ(setinc_value(s.from, and_weight(t.inputs->x, t.inputs->y)), v)
                << step_name(s.kind) << " " << describe(p);
          }
        }
      }
    }
  }
}

TEST(Certificate, TransformsAreInjectiveOnInputs) {
  const Certificate c = esetinc_lower_certificate(esetinc(8, 4, 4, 4, 2));
  for (const ReductionStep& s : c.steps) {
    std::set<BitString> xs;
    const auto rows = weight_strings(s.to.n, s.to.a);
    const BitString y0 = weight_strings(s.to.n, s.to.b).front();
    for (const auto& x : rows) xs.insert(reduction_transform(s.kind, s.to, s.args, BitPair{x, y0}).inputs->x);
    EXPECT_EQ(xs.size(), rows.size()) << step_name(s.kind);
  }
}

TEST(Certificate, RejectsInvalidParams) {
  EXPECT_THROW(esetinc_lower_certificate(esetinc(4, 2, 2, 4, 2)), ParameterError);
}

// ---- ranks ----

TEST(Rank, DisjointnessAndEqualitySlices) {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k <= 3 && 2 * k <= n; ++k) {
      const std::uint64_t full = binomial_coefficient(n, k);
      EXPECT_EQ(rank_mod_p(pif_slice_matrix(make_disj(n), k, k, Encoding::kZeroOne)), full) << n << k;
      EXPECT_EQ(rank_mod_p(pif_slice_matrix(make_eq(n), k, k, Encoding::kZeroOne)), full) << n << k;
      EXPECT_GE(rank_mod_p(pif_slice_matrix(make_disj(n), k, k, Encoding::kPlusMinusOne)), full - 1);
      EXPECT_GE(rank_mod_p(pif_slice_matrix(make_eq(n), k, k, Encoding::kPlusMinusOne)), full - 1);
    }
  }
}

TEST(Rank, DisjointSinglesAtFourIsJMinusI) {
  const FieldMatrix m = pif_slice_matrix(make_disj(4), 1, 1, Encoding::kZeroOne);
  ASSERT_EQ(m.rows, 4U);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(m.at(i, j), i == j ? 0U : 1U);
  EXPECT_EQ(rank_mod_p(m), 4U);
}

TEST(Rank, SmallMatricesAndDependentRows) {
  FieldMatrix m(3, 3);
  const std::uint64_t vals[9] = {1, 2, 3, 2, 4, 6, 1, 0, kFieldPrime - 1};
  for (int i = 0; i < 9; ++i) m.data[i] = vals[i];
  EXPECT_EQ(rank_mod_p(m), 2U);
  EXPECT_EQ(rank_rational(m), 2U);
  EXPECT_EQ(rank_mod_p(FieldMatrix(4, 5)), 0U);
}

TEST(Rank, FieldRankMatchesRationalRankOnRandomFunctions) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    const PIFunctionTable f = oracle::random_total_table(n, rng);
    for (Encoding e : {Encoding::kPlusMinusOne, Encoding::kZeroOne}) {
      const FieldMatrix m = pif_matrix(f, e);
      EXPECT_LE(rank_mod_p(m), rank_rational(m));
      EXPECT_EQ(rank_mod_p(m), rank_rational(m));
    }
  }
}

TEST(Rank, MatrixCapsAndPartialFunctions) {
  EXPECT_THROW(pif_matrix(make_disj(13), Encoding::kZeroOne), InputError);
  EXPECT_THROW(pif_matrix(make_setinc(esetinc(4, 2, 2, 2, 2)), Encoding::kZeroOne), InputError);
}

// ---- rank embeddings ----

TEST(Embedding, DisjointnessSingles) {
  const RankBound r = logrank_embedding_bound(make_disj(8));
  EXPECT_EQ(r.single_element_bound, 7U);
  bool found = false;
  for (const Embedding& e : r.per_slice) {
    if (e.a != 1 || e.b != 1) continue;
    found = true;
    EXPECT_EQ(e.kind, EmbeddingKind::kDisjointness);
    EXPECT_EQ(e.m, 8);
    EXPECT_EQ(e.bound, 7U);
    EXPECT_EQ(verify_embedding(make_disj(8), e), std::optional<bool>(true));
  }
  EXPECT_TRUE(found);
}

TEST(Embedding, EqualityStyleSlice) {
  PIFunctionTable f = make_constant(8, Value::kPlus);
  f.set(3, 3, 3, Value::kMinus);
  const RankBound r = logrank_embedding_bound(f);
  ASSERT_EQ(r.per_slice.size(), 1U);
  EXPECT_EQ(r.best.kind, EmbeddingKind::kEquality);
  EXPECT_EQ(r.best.m, 8);
  EXPECT_EQ(r.best.w, 3);
  EXPECT_EQ(r.best.bound, 55U);
  EXPECT_EQ(r.best_verified, std::optional<bool>(true));
}

TEST(Embedding, TrivialFunctionHasNoBound) {
  EXPECT_THROW(logrank_embedding_bound(make_constant(6, Value::kMinus)), NoBound);
  EXPECT_THROW(logrank_embedding_bound(make_setinc(esetinc(4, 2, 2, 2, 2))), InputError);
}

TEST(Embedding, VerifiedAndBelowFieldRankOnRandomFunctions) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    const int n = 3 + t % 4;
    const PIFunctionTable f = oracle::random_total_table(n, rng);
    if (!is_nontrivial(f)) continue;
    const RankBound r = logrank_embedding_bound(f);
    for (const Embedding& e : r.per_slice) EXPECT_NE(verify_embedding(f, e), std::optional<bool>(false));
    const std::size_t rank = rank_mod_p(pif_matrix(f, Encoding::kPlusMinusOne));
    EXPECT_GE(rank, r.best.bound);
  }
}

// ---- reports ----

TEST(Report, DisjointnessTwelve) {
  ReportOptions opt;
  opt.trials = 40;
  const BoundsReport r = report_bounds(make_disj(12), opt);
  EXPECT_EQ(r.measure.squared_num(), 7 * r.measure.squared_den());
  EXPECT_NEAR(r.measure.value, std::sqrt(0.5 * 3.5) / 0.5, 1e-12);
  ASSERT_TRUE(r.certificate.has_value());
  ASSERT_TRUE(r.rank_embedding.has_value());
  EXPECT_EQ(r.rank_embedding->single_element_bound, 11U);
  EXPECT_FALSE(r.rank_mod_p.has_value());
  ASSERT_TRUE(r.randomized && r.quantum);
  EXPECT_GT(r.randomized->mean_bits, 0);
  EXPECT_GT(r.quantum->mean_qubits, 0);
  const nlohmann::json j = report_to_json(r);
  for (const char* key : {"m", "witness", "certificate_chain", "paturi", "pattern_matrix_bound", "rank_bounds",
                          "measured_costs"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Report, ConstantIsTrivial) {
  const BoundsReport r = report_bounds(make_constant(6, Value::kPlus));
  EXPECT_EQ(r.measure.value, 0.0);
  EXPECT_FALSE(r.measure.witness.has_value());
  EXPECT_FALSE(r.certificate.has_value());
  EXPECT_FALSE(r.rank_embedding.has_value());
  EXPECT_TRUE(report_to_json(r)["witness"].is_null());
}

TEST(Report, ExactSetInclusionSixteen) {
  ReportOptions opt;
  opt.trials = 60;
  const BoundsReport r = report_bounds(make_setinc(esetinc(16, 8, 8, 8, 2)), opt);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_DOUBLE_EQ(r.certificate->reported_bound, 4.0);
  ASSERT_TRUE(r.quantum.has_value());
  const double q = r.quantum->mean_bits + r.quantum->mean_qubits;
  EXPECT_GE(q / (4.0 * 2.0), r.certificate->reported_bound / 4);
  EXPECT_GE(r.quantum->rate, 0.8);
}

}  // namespace
}  // namespace ccx
