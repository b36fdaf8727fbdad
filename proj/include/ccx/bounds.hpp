#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ccx/bits.hpp"
#include "ccx/harness.hpp"
#include "ccx/pif.hpp"

namespace ccx {

// ---- symmetric predicates ----

struct PaturiResult {
  int gamma = 0;
  int transition = 0;  // smallest k attaining gamma; D(k) != D(k+1)
  double adeg_value = 0.0;  // sqrt(n (n - gamma))
};

// D indexed by |x| in {0..n}; undefined entries allowed. Throws NoTransition.
PaturiResult paturi_gamma(const std::vector<Value>& predicate);

// -1 at weight l-1/2, +1 at weight l+1/2 on {0,1}^k; l = l2/2 with l2 odd, 0 < l <= k/2.
std::vector<Value> fkl_slice(int k, int l2);

// ---- pattern matrices ----

// Entries in {-1, 0 = undefined, +1}, row-major.
struct PartialMatrix {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::int8_t> entries;

  Value at(std::uint64_t r, std::uint64_t c) const {
    return static_cast<Value>(entries[r * cols + c]);
  }
};

inline constexpr std::uint64_t kMaxPatternEntries = std::uint64_t{1} << 20;

// Truth table over {0,1}^t, entry v is the value at bits_of_index(v, t).
std::vector<Value> symmetric_truth_table(const std::vector<Value>& predicate);

// Rows are x = bits_of_index(r, n). Column (V, w) has index v * 2^t + w where
// v = sum_j o_j (n/t)^j and o_j is V's offset inside block [j n/t, (j+1) n/t).
PartialMatrix pattern_matrix(int n, int t, const std::vector<Value>& truth);

// The (2k, k, f)-pattern matrix entry (row, col) read as an input pair of
// length 4k: x becomes x1 x̄1 ... x2k x̄2k, and (V, w) the weight-k indicator of
// the positions that x|_V ⊕ w reads.
BitPair pattern_embedded_pair(int k, std::uint64_t row, std::uint64_t col);

// ---- reduction chain ----

enum class StepKind {
  kPad,
  kComplementBob,
  kComplementAlice,
  kRepeat,
  kNormalizeN1N2,
  kHalveToHalfInteger,
  kCase1,
  kCase2,
  kCase3,
};

std::string step_name(StepKind k);

// Ones appended: l1 to x only, l2 to y only, l3 to both; l - l1 - l2 - l3 zeros.
struct PadLengths {
  int l1 = 0;
  int l2 = 0;
  int l3 = 0;
  int l = 0;
  bool operator==(const PadLengths&) const = default;
};

struct StepArgs {
  PadLengths pad;
  int repeat = 1;
};

// Compares doubled quantities: lhs2 <= rhs2 or lhs2 == rhs2.
struct SideCondition {
  const char* name = "";
  std::int64_t lhs2 = 0;
  std::int64_t rhs2 = 0;
  bool equality = false;
  bool holds() const { return equality ? lhs2 == rhs2 : lhs2 <= rhs2; }
};

struct TransformResult {
  SetIncParams params;
  std::optional<BitPair> inputs;
};

// Maps an instance (and optionally an input pair of it) to the instance that
// solves it: pad and repeat grow the instance, complements map it to an
// equivalent one with `bar` toggled. kNormalizeN1N2 and the case steps are
// pads; kHalveToHalfInteger repeats args.repeat times, then pads.
TransformResult reduction_transform(StepKind kind, const SetIncParams& params, const StepArgs& args,
                                    const std::optional<BitPair>& inputs = std::nullopt);

// Q(from) >= Q(to), witnessed by from == reduction_transform(kind, to, args).
struct ReductionStep {
  StepKind kind = StepKind::kPad;
  SetIncParams from;
  SetIncParams to;
  StepArgs args;
  std::vector<SideCondition> side_conditions;
};

struct Certificate {
  SetIncParams source;
  std::vector<ReductionStep> steps;
  SetIncParams terminal;
  int case_id = 0;
  int n1_2 = 0;
  int n2_2 = 0;
  int m1_2 = 0;
  int m2_2 = 0;
  // Terminal ESetInc(4k, 2k, k, l, 1/2); absent in case 1.
  int terminal_k = 0;
  int terminal_l2 = 0;
  double terminal_value = 0.0;  // sqrt(k l), or sqrt(m1 m2) in case 1
  double reported_bound = 0.0;  // sqrt(n1 n2) / g
};

// Throws ParameterError on invalid params; InvariantError if a side condition fails.
Certificate esetinc_lower_certificate(const SetIncParams& p);

// Side conditions of the whole chain, in step order.
std::vector<SideCondition> all_side_conditions(const Certificate& cert);

// ---- field matrices ----

inline constexpr std::uint64_t kFieldPrime = (std::uint64_t{1} << 61) - 1;

enum class Encoding { kPlusMinusOne, kZeroOne };
std::string encoding_name(Encoding e);

struct FieldMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;  // residues mod kFieldPrime, row-major
  std::string provenance;

  FieldMatrix() = default;
  FieldMatrix(std::size_t r, std::size_t c, std::string prov = {})
      : rows(r), cols(c), data(r * c, 0), provenance(std::move(prov)) {}
  std::uint64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// ±1 entries as themselves; 0/1 maps -1 to 1 and +1 to 0.
std::uint64_t encode_value(Value v, Encoding e);

inline constexpr int kMaxMatrixN = 12;

// Full 2^n x 2^n matrix; f must be total.
FieldMatrix pif_matrix(const PIFunctionTable& f, Encoding e);
// Rows of weight a by columns of weight b, each in increasing index order.
FieldMatrix pif_slice_matrix(const PIFunctionTable& f, int a, int b, Encoding e);

std::size_t rank_mod_p(FieldMatrix m);

// Exact rank over the rationals (fraction-free elimination); residues above
// p/2 are read as negative integers. At most 256 x 256.
std::size_t rank_rational(const FieldMatrix& m);

// ---- rank embeddings ----

enum class EmbeddingKind { kDisjointness, kEquality };

// A ±DISJ^w_m or ±EQ^w_m submatrix of f inside slice (a, b). Inputs of weight
// w on m positions are padded to (x', y') of the slice, after complementing
// Alice's and/or Bob's side; sign is the entry at embedded DISJ/EQ value -1.
struct Embedding {
  EmbeddingKind kind = EmbeddingKind::kDisjointness;
  int n = 0;
  int a = 0;
  int b = 0;
  bool complement_x = false;
  bool complement_y = false;
  int shift = 0;  // common ones
  int m = 0;
  int w = 0;
  int sign = 1;
  std::uint64_t bound = 0;  // C(m, w) - 1
};

std::string embedding_kind_name(EmbeddingKind k);

BitPair embed_pair(const Embedding& e, const BitString& x, const BitString& y);

// True when every embedded entry matches; nullopt if C(m, w)^2 > max_entries.
std::optional<bool> verify_embedding(const PIFunctionTable& f, const Embedding& e,
                                     std::uint64_t max_entries = std::uint64_t{1} << 16);

struct RankBound {
  std::vector<Embedding> per_slice;  // best embedding of each non-constant slice
  Embedding best;
  std::uint64_t single_element_bound = 0;  // best DISJ^1 embedding, C(m,1) - 1
  std::optional<bool> best_verified;
};

// f total and non-trivial, n <= 64. Throws NoBound otherwise.
RankBound logrank_embedding_bound(const PIFunctionTable& f);

// ---- reports ----

struct ReportOptions {
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  bool measure_costs = true;
  int exact_rank_max_n = 10;  // full-matrix F_p rank only up to this n
};

// A measured cost set beside an analytic expression; ratio = measured / reference.
struct CostComparison {
  std::string name;
  std::string statement;
  double measured = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
};

struct BoundsReport {
  std::string function;
  int n = 0;
  MeasureResult measure;
  std::optional<Certificate> certificate;
  std::optional<PaturiResult> paturi;  // at the terminal f_{k,l}
  std::optional<double> pattern_matrix_bound;  // adeg/4 * log2(n/t) at the terminal instance
  std::optional<RankBound> rank_embedding;
  std::optional<std::size_t> rank_mod_p;
  std::optional<SuccessEstimate> randomized;
  std::optional<SuccessEstimate> quantum;
  std::optional<std::uint64_t> deterministic_bits;  // worst case over slices
  std::vector<CostComparison> comparisons;
};

// Even trials at the witness jump's lower endpoint, odd at the upper; uniform
// over defined joint types when f has no jump.
InstanceGenerator witness_inputs(const PIFunctionTable& f);

BoundsReport report_bounds(const PIFunctionTable& f, const ReportOptions& opt = {});

nlohmann::json certificate_to_json(const Certificate& c);
nlohmann::json report_to_json(const BoundsReport& r);

}  // namespace ccx
