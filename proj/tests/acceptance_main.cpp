// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion, with one line per check underneath.
//
// Known-defect lines (documented in the README) are printed as expected
// failures and do not gate the exit code.
//
//   acceptance [--only N] [--seed S] [--threads T] [--out FILE]

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <thread>

#include "ncgf/checks.hpp"
#include "ncgf/report.hpp"
#include "ncgf/threading.hpp"

int main(int argc, char** argv) {
  int only = 0;
  std::uint64_t seed = 12345;
  int threads = 0;
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) threads = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--out") && i + 1 < argc) out = argv[++i];
  }
  if (threads <= 0) {
    if (const char* env = std::getenv("NCGF_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  ncgf::set_num_threads(threads);

  using Fn = ncgf::checks::CriterionResult (*)();
  struct Entry {
    int id;
    ncgf::checks::CriterionResult (*seeded)(std::uint64_t);
    Fn plain;
  };
  const Entry entries[] = {
      {1, ncgf::checks::chart_conditions, nullptr},
      {2, ncgf::checks::delta_decomposition, nullptr},
      {3, ncgf::checks::unitarity, nullptr},
      {4, ncgf::checks::star_commutators, nullptr},
      {5, ncgf::checks::pairing_identity, nullptr},
      {6, ncgf::checks::ad_covariance_cyclicity, nullptr},
      {7, nullptr, ncgf::checks::rd_reduction},
      {8, nullptr, ncgf::checks::u1_propagator_ladder},
      {9, nullptr, ncgf::checks::su2_spectral},
      {10, nullptr, ncgf::checks::schrodinger_consistency},
      {11, ncgf::checks::determinism, nullptr},
  };

  bool all_ok = true;
  std::vector<ncgf::checks::CriterionResult> results;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    const auto res = e.seeded ? e.seeded(seed) : e.plain();
    const bool ok = res.gate_pass();
    all_ok = all_ok && ok;
    std::printf("criterion %2d  %-4s  %7.2fs  %s\n", res.id, ok ? "PASS" : "FAIL", res.seconds,
                res.title.c_str());
    for (std::size_t i = 0; i < res.checks.size(); ++i) {
      const auto& c = res.checks[i];
      const bool xfail = i < res.expected_fail.size() && res.expected_fail[i];
      const char* tag = c.pass ? "pass" : (xfail ? "xfail" : "FAIL");
      std::printf("    %-34s %-5s measured %-12.4g tol %-10.4g %s\n", c.name.c_str(), tag,
                  c.measured, c.tolerance, c.note.c_str());
    }
    results.push_back(res);
  }

  if (!out.empty()) {
    const ncgf::Report rep = ncgf::checks::make_validate_report(results, seed, only == 0);
    ncgf::write_text_file(out, rep.to_json());
  }
  return all_ok ? 0 : 1;
}
