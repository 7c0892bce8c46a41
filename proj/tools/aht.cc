// aht: command-line front end for scenario runs and the identity checks.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aht/error.h"
#include "aht/scenario.h"
#include "aht/verification.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int fail(const char* category, const std::string& what, int code) {
  std::cerr << "aht: error: " << category << ": " << one_line(what) << "\n";
  return code;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw aht::ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw aht::ValidationError("write to '" + path + "' failed");
}

int run(const std::string& file, std::optional<std::uint64_t> seed,
        const std::string& out, const std::string& format) {
  aht::Scenario s = aht::load_scenario(file);
  if (seed) s.seed = *seed;
  if (!out.empty()) s.output_path = out;
  if (!format.empty()) s.format = format;
  const aht::RunOutput r = aht::run_scenario(s);
  write_output(r.text, s.output_path);
  return kExitOk;
}

int verify(std::uint64_t seed, int criterion) {
  std::vector<aht::CriterionResult> results;
  if (criterion > 0)
    results.push_back(aht::verify_criterion(criterion, seed));
  else
    results = aht::run_verification(seed);
  std::cout << aht::format_report(results, seed);
  for (const auto& r : results)
    if (!r.pass) return kExitFailed;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average-Hamiltonian and encoded decoupling toolkit"};
  app.require_subcommand(1);

  std::string file, out, format;
  std::optional<std::uint64_t> seed;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("file", file, "Scenario JSON file")->required();
  run_cmd->add_option("--seed", seed, "Override the scenario seed");
  run_cmd->add_option("--out", out, "Write results to PATH ('-' for stdout)");
  run_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  app.add_subcommand("list", "List built-in codes, sequences, groups and scenarios");

  std::uint64_t verify_seed = 1;
  int criterion = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the identity checks");
  verify_cmd->add_option("--seed", verify_seed, "Seed for random draws");
  verify_cmd->add_option("--criterion", criterion, "Run one check (1-9)")
      ->check(CLI::Range(1, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitValidation);
  }

  try {
    if (*run_cmd) return run(file, seed, out, format);
    if (app.got_subcommand("list")) {
      std::cout << aht::list_builtins();
      return kExitOk;
    }
    if (*verify_cmd) return verify(verify_seed, criterion);
  } catch (const aht::ValidationError& e) {
    return fail("validation", e.what(), kExitValidation);
  } catch (const nlohmann::json::exception& e) {
    return fail("validation", e.what(), kExitValidation);
  } catch (const aht::NumericalError& e) {
    return fail("numerical", e.what(), kExitNumerical);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitFailed);
  }
  return kExitOk;
}
