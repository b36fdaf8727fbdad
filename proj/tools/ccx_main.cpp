// ccx: command-line front end for the PI communication toolkit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ccx/cli.hpp"
#include "ccx/errors.hpp"
#include "ccx/tcp.hpp"

namespace {

using namespace ccx;
using nlohmann::json;

std::uint64_t env_seed() {
  const char* s = std::getenv("CCX_SEED");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end) throw InputError(std::string("CCX_SEED: expected an integer, got \"") + s + "\"");
  return v;
}

std::vector<Value> parse_predicate(const std::string& text) {
  std::vector<Value> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "*") {
      out.push_back(Value::kUndefined);
    } else if (item == "1" || item == "+1") {
      out.push_back(Value::kPlus);
    } else if (item == "-1") {
      out.push_back(Value::kMinus);
    } else {
      throw InputError("predicate: expected -1, 1 or *, got \"" + item + "\"");
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccx: permutation-invariant communication protocols, simulators and bound reports"};
  app.require_subcommand(1);

  std::string function, xs, ys, descriptor, format = "json", config, output, encoding = "pm1", slice, predicate;
  std::string host = "127.0.0.1";
  std::uint64_t seed = 0, trials = 200;
  int plant = -1, n = 0, t = 0, k = 0, l2 = 0, a = 0, b = 0, c2 = 0, g2 = 0, rank_max_n = 10;
  std::uint16_t port = 0;
  bool transcript = false, no_costs = false, bar = false;

  auto* eval = app.add_subcommand("eval", "evaluate f(x, y)");
  eval->add_option("-f,--function", function, "function file or inline builtin")->required();
  eval->add_option("-x,--x", xs, "Alice's input")->required();
  eval->add_option("-y,--y", ys, "Bob's input")->required();

  auto* measure = app.add_subcommand("measure", "compute m(f) and its witness");
  measure->add_option("-f,--function", function)->required();

  auto* protocol = app.add_subcommand("protocol", "run a protocol in-process");
  protocol->add_option("-d,--descriptor", descriptor)->required();
  protocol->add_option("-x,--x", xs);
  protocol->add_option("-y,--y", ys);
  protocol->add_option("--plant", plant, "setinc family: generate inputs with this |x∧y|");
  protocol->add_option("-s,--seed", seed, "defaults to CCX_SEED or 1");
  protocol->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  protocol->add_flag("--transcript", transcript, "include the full transcript");

  auto* bounds = app.add_subcommand("bounds", "lower-bound report for a function");
  bounds->add_option("-f,--function", function)->required();
  bounds->add_option("--trials", trials);
  bounds->add_option("-s,--seed", seed);
  bounds->add_option("--rank-max-n", rank_max_n, "full-matrix rank only up to this n");
  bounds->add_flag("--no-costs", no_costs, "skip protocol cost measurements");

  auto* rank = app.add_subcommand("rank", "rank over F_p of the communication matrix");
  rank->add_option("-f,--function", function)->required();
  rank->add_option("--encoding", encoding)->check(CLI::IsMember({"pm1", "zero_one"}));
  rank->add_option("--slice", slice, "a,b restricts rows to |x| = a and columns to |y| = b");

  auto* pattern = app.add_subcommand("pattern-matrix", "(n, t, f)-pattern matrix of a symmetric predicate");
  pattern->add_option("-n,--n", n);
  pattern->add_option("-t,--t", t);
  pattern->add_option("--predicate", predicate, "t+1 comma-separated values in {-1,1,*}");
  pattern->add_option("--k", k, "use f_{k,l} with n = 2k, t = k");
  pattern->add_option("--l2", l2, "doubled l for --k");

  auto* certificate = app.add_subcommand("certificate", "reduction chain for ESetInc(n,a,b,c,g)");
  for (auto [name, ptr] : {std::pair{"--n", &n}, {"--a", &a}, {"--b", &b}, {"--c2", &c2}, {"--g2", &g2}}) {
    certificate->add_option(name, *ptr)->required();
  }
  certificate->add_flag("--bar", bar);

  auto* sweep = app.add_subcommand("sweep", "parameter sweep with Monte Carlo statistics");
  sweep->add_option("-c,--config", config, "sweep config JSON")->required();
  sweep->add_option("-o,--output", output, "overrides the config's output path");

  auto* net = app.add_subcommand("net", "run a classical protocol over TCP");
  net->require_subcommand(1);
  auto* serve = net->add_subcommand("serve", "listen and play Alice");
  serve->add_option("-d,--descriptor", descriptor)->required();
  serve->add_option("-x,--x", xs)->required();
  serve->add_option("-s,--seed", seed);
  serve->add_option("-p,--port", port, "0 picks a free port, printed on stderr");
  auto* connect = net->add_subcommand("run", "connect and play Bob");
  connect->add_option("-d,--descriptor", descriptor)->required();
  connect->add_option("-y,--y", ys)->required();
  connect->add_option("-s,--seed", seed);
  connect->add_option("--host", host);
  connect->add_option("-p,--port", port)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitParameter;
  }

  try {
    if (seed == 0) seed = env_seed();
    if (*eval) {
      print(cli::cmd_eval(cli::resolve_function(function), parse_bits(xs), parse_bits(ys)));
    } else if (*measure) {
      print(cli::cmd_measure(cli::resolve_function(function)));
    } else if (*protocol) {
      cli::ProtocolRequest req;
      req.descriptor = descriptor;
      if (!xs.empty()) req.x = parse_bits(xs);
      if (!ys.empty()) req.y = parse_bits(ys);
      if (plant >= 0) req.plant = plant;
      req.seed = seed;
      req.include_transcript = transcript;
      const json report = cli::cmd_protocol(req);
      if (format == "text") {
        std::cout << cli::run_report_text(report);
      } else {
        print(report);
      }
    } else if (*bounds) {
      ReportOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      opt.measure_costs = !no_costs;
      opt.exact_rank_max_n = rank_max_n;
      print(cli::cmd_bounds(cli::resolve_function(function), opt));
    } else if (*rank) {
      std::optional<std::pair<int, int>> s;
      if (!slice.empty()) {
        const auto comma = slice.find(',');
        if (comma == std::string::npos) throw InputError("--slice: expected a,b");
        try {
          s = {std::stoi(slice.substr(0, comma)), std::stoi(slice.substr(comma + 1))};
        } catch (const std::logic_error&) {
          throw InputError("--slice: expected a,b, got \"" + slice + "\"");
        }
      }
      print(cli::cmd_rank(cli::resolve_function(function),
                          encoding == "pm1" ? Encoding::kPlusMinusOne : Encoding::kZeroOne, s));
    } else if (*pattern) {
      if (k > 0) {
        print(cli::cmd_pattern_matrix(2 * k, k, fkl_slice(k, l2)));
      } else {
        print(cli::cmd_pattern_matrix(n, t, parse_predicate(predicate)));
      }
    } else if (*certificate) {
      SetIncParams p{n, a, b, c2, g2, SetIncVariant::kESetInc, bar};
      print(cli::cmd_certificate(p));
    } else if (*sweep) {
      const char* env = std::getenv("CCX_SEED");
      std::optional<std::uint64_t> default_seed;
      if (env && *env) default_seed = env_seed();
      cli::SweepConfig cfg = cli::sweep_config_from_json(read_json_file(config), default_seed);
      if (!output.empty()) cfg.output = output;
      std::cout << cli::write_sweep(cfg);
    } else if (*serve || *connect) {
      const auto proto = cli::make_protocol(cli::parse_descriptor(descriptor));
      RemoteOptions opt;
      opt.on_listening = [](std::uint16_t p) { std::cerr << "listening on port " << p << std::endl; };
      const bool listen = static_cast<bool>(*serve);
      const RunResult r = run_remote(listen ? Role::kListen : Role::kConnect, Endpoint{host, port}, *proto,
                                     parse_bits(listen ? xs : ys), seed, opt);
      print(cli::run_result_to_json(*proto, r, transcript));
    }
  } catch (const std::exception& e) {
    std::cerr << "ccx: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
  return cli::kExitOk;
}
