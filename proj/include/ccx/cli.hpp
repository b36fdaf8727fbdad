#pragma once

#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ccx/bounds.hpp"
#include "ccx/classical.hpp"
#include "ccx/quantum.hpp"

namespace ccx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInternal = 4;

// 2 for input, parameter and promise errors; 3 for files and transports; 4 otherwise.
int exit_code_for(const std::exception& e);

// A function file path, or an inline builtin such as "disj n=6" or
// "esetinc n=16 a=8 b=8 c2=8 g2=2". Inline keys: n, value, a, b, c2, g2, bar.
PIFunctionTable resolve_function(const std::string& spec);

enum class ProtocolKind { kSetInc, kQuantumSetInc, kPI, kQuantumPI, kDeterministic };

// Descriptors:
//   setinc(n,a,b,c2,g2[,idealized|measured][,cs=..][,reps=..][,estimator=composition|parity])
//   qsetinc(n,a,b,c2,g2[,t|auto[,reps|auto]])
//   pi(FN), qpi(FN), det-total(FN)
// The setinc family also takes esetinc, ghd and eghd, each with an optional
// "-bar" suffix, and "randomized" as a synonym for the default accounting.
struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::kSetInc;
  SetIncParams params;
  SetIncOptions classical;
  QuantumOptions quantum;
  std::optional<PIFunctionTable> function;
};

ProtocolSpec parse_descriptor(const std::string& text);
std::unique_ptr<Protocol> make_protocol(const ProtocolSpec& spec);

// Random pair with |x| = a, |y| = b, |x∧y| = k, placed by a permutation from rng.
BitPair planted_pair(int n, int a, int b, int k, PublicRandomness& rng);

// 64-bit FNV-1a over (sender, kind, width, payload, repeat, charged) of each message, hex.
std::string transcript_digest(const Transcript& t);

nlohmann::json run_result_to_json(const Protocol& protocol, const RunResult& r, bool include_transcript);
// Inverse of run_result_to_json for reports that include the transcript.
RunResult run_result_from_json(const nlohmann::json& report);
std::string run_report_text(const nlohmann::json& report);

nlohmann::json cmd_eval(const PIFunctionTable& f, const BitString& x, const BitString& y);
nlohmann::json cmd_measure(const PIFunctionTable& f);

struct ProtocolRequest {
  std::string descriptor;
  std::optional<BitString> x;
  std::optional<BitString> y;
  // For setinc-family descriptors: generate the inputs with |x∧y| = plant
  // (intersection form) from the seed instead of reading x and y.
  std::optional<int> plant;
  std::uint64_t seed = 1;
  bool include_transcript = false;
};

nlohmann::json cmd_protocol(const ProtocolRequest& req);

nlohmann::json cmd_bounds(const PIFunctionTable& f, const ReportOptions& opt);
// Whole matrix, or the (a, b) slice when given.
nlohmann::json cmd_rank(const PIFunctionTable& f, Encoding e, std::optional<std::pair<int, int>> slice);
// Rows are strings over {+, -, *}; at most 256 x 256 entries are listed.
nlohmann::json cmd_pattern_matrix(int n, int t, const std::vector<Value>& predicate);
nlohmann::json cmd_certificate(const SetIncParams& p);

// ---- sweeps ----

// {"protocol": "setinc" | "qsetinc", "variant": "setinc", "accounting": "idealized",
//  "grid": {"n": [...], "a": [...], "b": [...], "c2": [...], "g2": [...]},
//  "t": [...], "reps": [...]  (qsetinc only, optional),
//  "trials": 200, "master_seed": 1, "output": "out.csv", "format": "csv" | "json"}
struct SweepConfig {
  ProtocolKind protocol = ProtocolKind::kSetInc;
  SetIncVariant variant = SetIncVariant::kSetInc;
  SamplerAccounting accounting = SamplerAccounting::kIdealized;
  std::vector<int> n, a, b, c2, g2;
  std::vector<std::optional<int>> t{std::nullopt};
  std::vector<std::optional<int>> reps{std::nullopt};
  std::uint64_t trials = 200;
  std::uint64_t master_seed = 1;
  std::string output;  // empty writes to stdout
  std::string format = "csv";
};

// default_seed applies when the config has no master_seed (CCX_SEED in the CLI).
SweepConfig sweep_config_from_json(const nlohmann::json& doc, std::optional<std::uint64_t> default_seed = {});

inline constexpr const char* kSweepSchema = "ccx-sweep-v1";

struct SweepRow {
  SetIncParams params;
  std::optional<int> t;
  std::optional<int> reps;
  bool skipped = false;
  std::string reason;
  int n1_2 = 0;
  int n2_2 = 0;
  SuccessEstimate estimate;
  std::uint64_t predicted = 0;  // bits or qubits per run from the plan
};

// Cells in grid order n, a, b, c2, g2, t, reps. Cell i uses
// derive_seed(master_seed, i); trials alternate the two promise endpoints.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
// Runs the sweep and writes it to cfg.output (IoError if unwritable) or returns it.
std::string write_sweep(const SweepConfig& cfg);

}  // namespace ccx::cli
