// Command-line driver: run elections, estimate tamper detection, verify
// transcripts, and inspect group parameters.
//
// Exit codes: 0 success, 1 verification failure, 2 bad config or strategy,
// 3 protocol abort mid-run, 4 malformed transcript.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixvote/errors.hpp"
#include "mixvote/group.hpp"
#include "mixvote/protocol.hpp"
#include "mixvote/tamper.hpp"
#include "mixvote/verifier.hpp"

namespace {

using nlohmann::json;
using namespace mixvote;

constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAbort = 3;
constexpr int kExitMalformed = 4;

int exit_code_for(const Error& e) {
  if (e.code() == errc::transcript_malformed) return kExitMalformed;
  if (e.code() == errc::config_error || e.code() == errc::unknown_strategy) return kExitConfig;
  return kExitAbort;
}

// Config file: a JSON object; unknown keys are rejected so typos cannot
// silently fall back to defaults.
ElectionConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::config_error, "cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(errc::config_error, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(errc::config_error, "config must be a JSON object");

  ElectionConfig cfg;
  try {
    for (auto& [key, value] : j.items()) {
      if (key == "name") {
        cfg.name = value.get<std::string>();
      } else if (key == "n") {
        cfg.n = value.get<std::uint32_t>();
      } else if (key == "c") {
        cfg.c = value.get<std::uint32_t>();
      } else if (key == "lambda") {
        cfg.lambda = value.get<std::uint32_t>();
      } else if (key == "q_bits") {
        cfg.q_bits = value.get<unsigned>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "voters") {
        // Either an explicit name list or a count expanded to voter-1…voter-k.
        if (value.is_number_unsigned()) {
          for (std::uint64_t i = 1; i <= value.get<std::uint64_t>(); ++i)
            cfg.voters.push_back("voter-" + std::to_string(i));
        } else {
          cfg.voters = value.get<std::vector<std::string>>();
        }
      } else if (key == "votes") {
        cfg.votes = value.get<std::vector<std::uint32_t>>();
      } else if (key == "test_casts") {
        cfg.test_casts = value.get<std::uint32_t>();
      } else if (key == "codes") {
        cfg.codes = value.get<bool>();
      } else if (key == "hash_algo") {
        cfg.hash_algo = value.get<std::string>();
      } else {
        throw Error(errc::config_error, "unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw Error(errc::config_error, std::string("bad config value: ") + e.what());
  }

  if (const char* env = std::getenv("MIXVOTE_HASH"); env && *env) cfg.hash_algo = env;
  validate_config(cfg);
  return cfg;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::config_error, "cannot open output file: " + path);
  out << data;
  if (!out) throw Error(errc::config_error, "write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::transcript_malformed, "cannot open transcript: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json report_json(const AuditReport& report) {
  json checks = json::array();
  for (const Check& ch : report.checks)
    checks.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
  return {{"overall", all_passed(report)}, {"checks", checks}, {"complaints", report.complaints}};
}

void print_report(const AuditReport& report) {
  for (const Check& ch : report.checks)
    std::printf("  %-24s %s%s%s\n", ch.name.c_str(), ch.pass ? "ok" : "FAIL",
                ch.detail.empty() ? "" : "  ", ch.detail.c_str());
  if (!report.complaints.empty()) {
    std::printf("  complaints:");
    for (const std::string& c : report.complaints) std::printf(" %s", c.c_str());
    std::printf("\n");
  }
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            std::optional<std::uint64_t> seed, const std::string& format) {
  ElectionConfig cfg = load_config(config_path);
  if (seed) cfg.seed = *seed;

  Election election(cfg);
  election.run();

  Transcript transcript = election.transcript();
  std::string blob = export_transcript(transcript);
  if (!out_path.empty()) write_file(out_path, blob);

  AuditReport report = verify_transcript(transcript);
  bool ok = all_passed(report);
  const Tally& tally = election.tally();

  if (format == "machine") {
    json out{{"name", cfg.name},
             {"counts", tally.counts},
             {"counted", tally.counted.size()},
             {"test_hits", tally.test_hits.size()},
             {"undecodable", tally.undecodable.size()},
             {"traces", election.traces().size()},
             {"complaints", election.complaints_posted()},
             {"entries", transcript.entries.size()},
             {"transcript_bytes", blob.size()},
             {"verified", ok}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("election %s: n=%u c=%u lambda=%u q_bits=%u seed=%llu\n", cfg.name.c_str(),
                cfg.n, cfg.c, cfg.lambda, cfg.q_bits, (unsigned long long)cfg.seed);
    std::printf("tally:\n");
    for (std::size_t v = 0; v < tally.counts.size(); ++v)
      std::printf("  candidate %zu: %llu\n", v, (unsigned long long)tally.counts[v]);
    std::printf("counted %zu votes, %zu test hits, %zu undecodable, %u complaints\n",
                tally.counted.size(), tally.test_hits.size(), tally.undecodable.size(),
                election.complaints_posted());
    if (!out_path.empty())
      std::printf("transcript: %s (%zu entries, %zu bytes)\n", out_path.c_str(),
                  transcript.entries.size(), blob.size());
    std::printf("audit:\n");
    print_report(report);
    std::printf("verification: %s\n", ok ? "PASS" : "FAIL");
  }
  return ok ? 0 : kExitVerifyFail;
}

int cmd_tamper(const std::string& config_path, const std::string& strategy_text,
               std::uint32_t trials, std::optional<std::uint64_t> seed,
               const std::string& format) {
  ElectionConfig cfg = load_config(config_path);
  if (seed) cfg.seed = *seed;
  TamperStrategy strategy = parse_strategy(strategy_text);

  DetectionStats stats = estimate_detection(cfg, strategy, trials);

  if (format == "machine") {
    json out{{"strategy", strategy.kind},
             {"trials", stats.trials},
             {"detected", stats.detected},
             {"aborted", stats.aborted},
             {"rate", stats.rate()},
             {"wilson_low", stats.wilson_low()},
             {"wilson_high", stats.wilson_high()}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("strategy %s: detected %u of %u trials (%u aborted runs)\n",
                strategy_text.c_str(), stats.detected, stats.trials, stats.aborted);
    std::printf("detection rate %.4f, 95%% interval [%.4f, %.4f]\n", stats.rate(),
                stats.wilson_low(), stats.wilson_high());
    std::printf("undetected rate %.4f\n", 1.0 - stats.rate());
  }
  return 0;
}

int cmd_verify(const std::string& in_path, const std::string& format) {
  Transcript transcript = import_transcript(read_file(in_path));
  AuditReport report = verify_transcript(transcript);
  bool ok = all_passed(report);

  if (format == "machine") {
    std::printf("%s\n", report_json(report).dump(2).c_str());
  } else {
    std::printf("transcript: %zu entries, n=%u lambda=%u c=%u\n", transcript.entries.size(),
                transcript.n, transcript.lambda, transcript.gp.c);
    print_report(report);
    std::printf("verification: %s\n", ok ? "PASS" : "FAIL");
  }
  return ok ? 0 : kExitVerifyFail;
}

int cmd_params(unsigned q_bits, std::uint32_t candidates, std::uint64_t seed,
               const std::string& hash_algo, const std::string& format) {
  std::string algo = hash_algo;
  if (const char* env = std::getenv("MIXVOTE_HASH"); env && *env) algo = env;
  GroupParams gp = generate_params(q_bits, candidates, u64_be(seed), algo);
  bool ok = validate_params(gp);

  auto hex = [](const mpz_class& v) { return v.get_str(16); };
  unsigned p_bits = static_cast<unsigned>(mpz_sizeinbase(gp.p.get_mpz_t(), 2));
  if (format == "machine") {
    json out{{"p", hex(gp.p)},   {"q", hex(gp.q)}, {"g", hex(gp.g)},
             {"h", hex(gp.h)},   {"c", gp.c},      {"p_bits", p_bits},
             {"hash", gp.hash_algo}, {"valid", ok}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("p = %s (%u bits)\nq = %s\ng = %s\nh = %s\nc = %u\nhash = %s\nvalid: %s\n",
                hex(gp.p).c_str(), p_bits, hex(gp.q).c_str(), hex(gp.g).c_str(),
                hex(gp.h).c_str(), gp.c, gp.hash_algo.c_str(), ok ? "yes" : "no");
  }
  return ok ? 0 : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"remote-voting protocol simulator"};
  app.require_subcommand(1);
  std::string format = "text";

  std::string run_config, run_out;
  std::optional<std::uint64_t> run_seed;
  CLI::App* run = app.add_subcommand("run", "run one election and write its transcript");
  run->add_option("--config", run_config, "election config (JSON)")->required();
  run->add_option("--out", run_out, "transcript output path");
  run->add_option("--seed", run_seed, "override the config seed");
  run->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  std::string tamper_config, tamper_strategy;
  std::uint32_t tamper_trials = 100;
  std::optional<std::uint64_t> tamper_seed;
  CLI::App* tamper = app.add_subcommand("tamper", "estimate detection rate for a tamper strategy");
  tamper->add_option("--config", tamper_config, "election config (JSON)")->required();
  tamper->add_option("--strategy", tamper_strategy,
                     "kind[:server=S,slot=J,count=K]; kinds: none replace-onion "
                     "wrong-partial-decrypt inconsistent-l forge-validator swap-outputs "
                     "ec2-lie-on-audit mitm-alter-id")
      ->required();
  tamper->add_option("--trials", tamper_trials, "number of independent elections");
  tamper->add_option("--seed", tamper_seed, "override the config seed");
  tamper->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  std::string verify_in;
  CLI::App* verify = app.add_subcommand("verify", "verify a transcript from public data alone");
  verify->add_option("--in", verify_in, "transcript path")->required();
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  unsigned params_q_bits = 64;
  std::uint32_t params_c = 3;
  std::uint64_t params_seed = 1;
  std::string params_hash = "sha256";
  CLI::App* params = app.add_subcommand("params", "generate and validate group parameters");
  params->add_option("--q-bits", params_q_bits, "subgroup size in bits");
  params->add_option("--candidates", params_c, "candidate count c");
  params->add_option("--seed", params_seed, "search seed");
  params->add_option("--hash", params_hash, "hash algorithm");
  params->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config, run_out, run_seed, format);
    if (tamper->parsed()) return cmd_tamper(tamper_config, tamper_strategy, tamper_trials,
                                            tamper_seed, format);
    if (verify->parsed()) return cmd_verify(verify_in, format);
    return cmd_params(params_q_bits, params_c, params_seed, params_hash, format);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitAbort;
  }
}
