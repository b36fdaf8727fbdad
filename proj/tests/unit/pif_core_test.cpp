#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ccx/errors.hpp"
#include "ccx/function_io.hpp"
#include "ccx/pif.hpp"
#include "oracles/pif_oracles.hpp"

namespace ccx {
namespace {

constexpr Value M = Value::kMinus;
constexpr Value P = Value::kPlus;
constexpr Value U = Value::kUndefined;

SliceFunction slice_of(std::vector<Value> values, int lo = 0) {
  SliceFunction s;
  s.lo = lo;
  s.hi = lo + static_cast<int>(values.size()) - 1;
  s.values = std::move(values);
  return s;
}

SetIncParams esetinc(int n, int a, int b, int c2, int g2) {
  return {n, a, b, c2, g2, SetIncVariant::kESetInc, false};
}

TEST(EvalPif, DisjointnessExamples) {
  auto disj = make_disj(4);
  EXPECT_EQ(eval_pif(disj, parse_bits("0011"), parse_bits("0011")), P);
  EXPECT_EQ(eval_pif(disj, parse_bits("1100"), parse_bits("0011")), M);
}

TEST(EvalPif, GapValueIsUndefined) {
  auto f = make_setinc(esetinc(4, 2, 2, 2, 2));
  EXPECT_EQ(eval_pif(f, parse_bits("1100"), parse_bits("1010")), U);
}

TEST(EvalPif, LengthMismatchIsInputError) {
  auto disj = make_disj(4);
  EXPECT_THROW(eval_pif(disj, parse_bits("001"), parse_bits("0011")), InputError);
}

TEST(EvalPif, PermutationInvarianceExhaustive) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    auto f = oracle::random_table(n, rng, 0.3);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 4; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::uint64_t xi = 0; xi < (1U << n); ++xi) {
        for (std::uint64_t yi = 0; yi < (1U << n); ++yi) {
          BitString x = bits_of_index(xi, n), y = bits_of_index(yi, n);
          BitString px(n), py(n);
          for (int i = 0; i < n; ++i) {
            px[i] = x[perm[i]];
            py[i] = y[perm[i]];
          }
          ASSERT_EQ(eval_pif(f, px, py), eval_pif(f, x, y));
        }
      }
    }
  }
}

TEST(DeriveSlice, Examples) {
  auto s = derive_slice(make_disj(2), 1, 1);
  EXPECT_EQ(s.lo, 0);
  EXPECT_EQ(s.values, (std::vector<Value>{M, P}));

  s = derive_slice(make_setinc(esetinc(4, 2, 2, 2, 2)), 2, 2);
  EXPECT_EQ(s.values, (std::vector<Value>{P, U, M}));

  s = derive_slice(make_disj(4), 3, 3);
  EXPECT_EQ(s.lo, 2);
  EXPECT_EQ(s.hi, 3);
  EXPECT_EQ(s.values, (std::vector<Value>{P, P}));
  EXPECT_FALSE(s.non_trivial());
}

TEST(Jumps, Examples) {
  EXPECT_EQ(jumps(slice_of({M, U, P})), (std::vector<Jump>{{2, 2}}));
  EXPECT_EQ(jumps(slice_of({M, P, M})), (std::vector<Jump>{{1, 1}, {3, 1}}));
  EXPECT_EQ(jumps(slice_of({M, U, M, P})), (std::vector<Jump>{{5, 1}}));
}

TEST(Jumps, AgreeWithBruteForceScan) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    auto f = oracle::random_table(n, rng, 0.4);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        auto fast = jumps(derive_slice(f, a, b));
        auto slow = oracle::brute_jumps(f, a, b);
        std::sort(slow.begin(), slow.end(), [](Jump l, Jump r) { return l.c2 < r.c2; });
        ASSERT_EQ(fast, slow) << "n=" << n << " a=" << a << " b=" << b;
        for (const Jump& j : fast) {
          EXPECT_GT(j.g2, 0);
          EXPECT_EQ((j.c2 - j.g2) % 2, 0);
        }
      }
  }
}

TEST(Intervals, Examples) {
  EXPECT_EQ(intervals(0, 2, {{2, 2}}), (std::vector<Interval>{{0, 0}, {2, 2}}));
  EXPECT_EQ(intervals(0, 3, {}), (std::vector<Interval>{{0, 3}}));
  EXPECT_EQ(intervals(0, 2, {{1, 1}, {3, 1}}), (std::vector<Interval>{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Intervals, DefinedValuesAgreeInsideEachInterval) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    auto f = oracle::random_table(n, rng, 0.5);
    int a = static_cast<int>(rng() % (n + 1)), b = static_cast<int>(rng() % (n + 1));
    auto s = derive_slice(f, a, b);
    auto js = jumps(s);
    auto iv = intervals(s, js);
    ASSERT_EQ(iv.size(), js.size() + 1);
    for (std::size_t i = 0; i < iv.size(); ++i) {
      Value seen = U;
      for (int c = iv[i].lo; c <= iv[i].hi; ++c) {
        Value v = s.at(c);
        if (!defined(v)) continue;
        if (defined(seen)) {
          ASSERT_EQ(v, seen);
        }
        seen = v;
      }
      if (i > 0) {
        ASSERT_NE(s.first_defined(iv[i].lo, iv[i].hi), s.first_defined(iv[i - 1].lo, iv[i - 1].hi));
      }
    }
  }
}

TEST(SmallestTwo, Examples) {
  auto q = smallest_two(10, 4, 5, 4);
  EXPECT_EQ(q.n1_2, 4);
  EXPECT_EQ(q.n2_2, 4);
  q = smallest_two(12, 4, 4, 1);
  EXPECT_EQ(q.cells2, (std::array<int, 4>{1, 7, 7, 9}));
  EXPECT_EQ(q.n1_2, 1);
  EXPECT_EQ(q.n2_2, 7);
  q = smallest_two(4, 2, 2, 2);
  EXPECT_EQ(q.n1_2, 2);
  EXPECT_EQ(q.n2_2, 2);
}

TEST(Measure, ConstantIsZero) {
  auto r = measure_m(make_constant(9, P));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_FALSE(is_nontrivial(make_constant(9, P)));
}

TEST(Measure, ExactSetIncTable) {
  auto r = measure_m(make_setinc(esetinc(4, 2, 2, 2, 2)));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(*r.witness, (MeasureWitness{2, 2, 2, 2}));
}

TEST(Measure, Disj12) {
  auto r = measure_m(make_disj(12));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, (MeasureWitness{4, 4, 1, 1}));
  // m^2 = (1/2 * 7/2) / (1/2)^2 = 7
  EXPECT_EQ(r.squared_num(), 7);
  EXPECT_EQ(r.squared_den(), 1);
  EXPECT_NEAR(r.value, std::sqrt(7.0), 1e-12);
}

TEST(Measure, MatchesNaiveOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    auto f = oracle::random_table(n, rng, trial % 3 == 0 ? 0.0 : 0.5);
    auto fast = measure_m(f);
    auto slow = oracle::naive_measure(f);
    if (slow.a < 0) {
      EXPECT_FALSE(fast.witness.has_value());
      continue;
    }
    ASSERT_TRUE(fast.witness.has_value());
    EXPECT_EQ(fast.squared_num() * slow.den, slow.num * fast.squared_den());
    EXPECT_EQ(*fast.witness, (MeasureWitness{slow.a, slow.b, slow.c2, slow.g2}));
  }
}

TEST(SetIncConvert, Examples) {
  SetIncParams s{10, 4, 5, 4, 2, SetIncVariant::kSetInc, false};
  SetIncParams g{10, 4, 5, 10, 4, SetIncVariant::kGHD, false};
  EXPECT_EQ(setinc_ghd_convert(s), g);
  EXPECT_EQ(setinc_ghd_convert(g), s);
}

TEST(SetIncConvert, ParityMismatchIsParameterError) {
  // a+b = 9, distances 5 +- 1 are even and cannot be realized.
  SetIncParams g{10, 4, 5, 10, 2, SetIncVariant::kGHD, false};
  EXPECT_THROW(setinc_ghd_convert(g), ParameterError);
}

TEST(SetIncConvert, DistanceIdentityExhaustive) {
  const int n = 6;
  for (std::uint64_t xi = 0; xi < 64; ++xi)
    for (std::uint64_t yi = 0; yi < 64; ++yi) {
      BitString x = bits_of_index(xi, n), y = bits_of_index(yi, n);
      ASSERT_EQ(hamming_distance(x, y), weight(x) + weight(y) - 2 * and_weight(x, y));
    }
}

TEST(SetIncConvert, RoundTripAndEqualTables) {
  for (int n = 1; n <= 8; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        for (int u = domain_lo(n, a, b); u <= domain_hi(a, b); ++u)
          for (int v = u + 1; v <= domain_hi(a, b); ++v)
            for (auto var : {SetIncVariant::kSetInc, SetIncVariant::kESetInc})
              for (bool bar : {false, true}) {
                SetIncParams p{n, a, b, u + v, v - u, var, bar};
                SetIncParams q = setinc_ghd_convert(p);
                ASSERT_EQ(setinc_ghd_convert(q), p);
                ASSERT_TRUE(make_setinc(p) == make_setinc(q)) << describe(p);
              }
}

TEST(MakeSetInc, Examples) {
  auto e = make_setinc(esetinc(4, 2, 2, 2, 2));
  EXPECT_EQ(e.at(2, 2, 0), P);
  EXPECT_EQ(e.at(2, 2, 2), M);
  EXPECT_EQ(e.at(2, 2, 1), U);
  auto s = make_setinc({4, 2, 2, 2, 2, SetIncVariant::kSetInc, false});
  EXPECT_EQ(s.at(2, 2, 0), M);
  EXPECT_EQ(s.at(2, 2, 2), P);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      if (a != 2 || b != 2) {
        for (int c = 0; c <= 4; ++c) EXPECT_EQ(e.at(a, b, c), U);
      }
}

TEST(MakeSetInc, BarNegates) {
  auto p = esetinc(8, 4, 4, 4, 2);
  auto q = p;
  q.bar = true;
  auto f = make_setinc(p), g = make_setinc(q);
  for (int c = 0; c <= 4; ++c) EXPECT_EQ(g.at(4, 4, c), negate(f.at(4, 4, c)));
}

TEST(MakeSetInc, UnachievableEndpointIsParameterError) {
  EXPECT_THROW(make_setinc(esetinc(4, 2, 2, 4, 2)), ParameterError);   // c+g = 3 > min(a,b)
  EXPECT_THROW(make_setinc(esetinc(4, 3, 3, 2, 2)), ParameterError);   // c-g = 0 < a+b-n
  EXPECT_THROW(make_setinc(esetinc(4, 2, 2, 2, 1)), ParameterError);   // half-integer endpoints
  EXPECT_THROW(make_setinc(esetinc(4, 2, 2, 2, 0)), ParameterError);
}

TEST(FunctionIo, RoundTripAndBuiltins) {
  std::mt19937_64 rng(19);
  auto f = oracle::random_table(5, rng, 0.3);
  auto g = function_from_json(function_to_json(f));
  EXPECT_TRUE(f == g);

  auto disj = function_from_text(R"({"n": 6, "builtin": "disj"})");
  EXPECT_TRUE(disj == make_disj(6));
  auto e = function_from_text(
      R"({"n": 16, "builtin": {"name": "esetinc", "a": 8, "b": 8, "c2": 8, "g2": 4}})");
  EXPECT_TRUE(e == make_setinc(esetinc(16, 8, 8, 8, 4)));
  auto c = function_from_text(R"({"n": 3, "default": -1})");
  EXPECT_TRUE(c == make_constant(3, M));
}

TEST(FunctionIo, Diagnostics) {
  try {
    function_from_text("{\"builtin\": \"disj\"}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("\"n\""), std::string::npos);
  }
  try {
    function_from_text("{\n  \"n\": 4,\n  \"entries\": [ {\"a\": 1, \"b\": 1} ]\n}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("entries[0]"), std::string::npos);
  }
  try {
    function_from_text("{\n  \"n\": 4,\n  \"default\": ]\n}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace ccx
