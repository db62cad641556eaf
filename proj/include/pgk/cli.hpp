#pragma once

// Command runner shared by the pgk executable, the Python module and the tests.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgk/arith.hpp"

namespace pgk {

enum ExitCode : int { kExitDecided = 0, kExitUsage = 1, kExitUndecided = 3, kExitPrecision = 4 };

struct Precision {
  int a = 8;
  i64 N = 64;
  std::optional<int> L;  // default a + ceil(log_p N)
};

struct JobSpec {
  std::string command;  // series, admissible, reduce, correspond, classify-trianguline, ext-dim, tree, box, sweep
  std::string op;       // sub-operation where the command has one
  std::map<std::string, std::string> params;
  Precision precision;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> cache_dir;
  int threads = 0;  // 0: hardware concurrency
  i64 default_p = 5;
};

/// Reads "key = value" lines (# comments): p, a, N, L, threads, cache.
void apply_config(JobSpec& job, const std::filesystem::path& file);

/// Runs the job, writing the result to job.output (atomically) or to out. Errors go to err as JSON.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// One row of a sweep table; error is empty on success.
struct SweepRow {
  std::vector<std::string> cells;
  std::string error;
};
struct SweepTable {
  std::string command;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
};

/// Reduction table over k in [k_lo, k_hi] and val(a_p) in vals, with a_p = p^val exactly.
SweepTable reduction_sweep(i64 p, i64 k_lo, i64 k_hi, const std::vector<Rational>& vals, int threads);
/// Admissibility of D_{k,a_p} over the same grid.
SweepTable admissibility_sweep(i64 p, i64 k_lo, i64 k_hi, const std::vector<Rational>& vals, int threads);

std::string to_csv(const SweepTable& t);
std::string to_json_text(const SweepTable& t);

/// Writes to a temporary file in the same directory, then renames.
void write_atomically(const std::filesystem::path& file, const std::string& text);

}  // namespace pgk
