// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: aht_acceptance [path-to-aht] [seed]

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "aht/verification.h"

namespace {

// Wall-clock limits per criterion, in seconds. Zero means unlimited.
constexpr double kRuntimeLimit[11] = {0, 5.0, 0, 10.0, 0, 0, 0, 0, 0, 120.0, 0};

struct Line {
  int id;
  bool pass;
  std::string text;
};

void print(const Line& l) {
  std::printf("criterion %2d  %s  %s\n", l.id, l.pass ? "PASS" : "FAIL",
              l.text.c_str());
  std::fflush(stdout);
}

Line timed(int id, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  aht::CriterionResult r;
  try {
    r = aht::verify_criterion(id, seed);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false,
         std::string("error: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Line l{id, r.pass, r.title + ": " + r.detail};
  if (kRuntimeLimit[id] > 0) {
    char buf[96];
    const bool in_time = secs < kRuntimeLimit[id];
    std::snprintf(buf, sizeof buf, "; runtime %.2f s (limit %.0f s)", secs,
                  kRuntimeLimit[id]);
    l.text += buf;
    l.pass = l.pass && in_time;
  }
  return l;
}

bool capture(const std::string& cmd, std::string& out) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return false;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;)
    out.append(buf, n);
  pclose(p);
  return true;
}

Line reproducibility(const std::string& cli, std::uint64_t seed) {
  Line l{10, false, "reproducible verify reports: "};
  if (cli.empty()) {
    l.text += "no aht executable given";
    return l;
  }
  const std::string cmd = "\"" + cli + "\" verify --seed " + std::to_string(seed);
  std::string a, b;
  if (!capture(cmd, a) || !capture(cmd, b)) {
    l.text += "could not run " + cmd;
    return l;
  }
  l.pass = !a.empty() && a == b;
  l.text += "two runs of `aht verify --seed " + std::to_string(seed) + "`, " +
            std::to_string(a.size()) + " bytes, " +
            (a == b ? "identical" : "different");
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  int failed = 0;
  for (int id = 1; id <= 9; ++id) {
    const Line l = timed(id, seed);
    print(l);
    failed += !l.pass;
  }
  const Line l = reproducibility(cli, seed);
  print(l);
  failed += !l.pass;
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
