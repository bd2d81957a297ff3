#pragma once

// Command implementations behind the gw executable.

#include <iosfwd>
#include <vector>

#include "gw/report.hpp"

namespace gw {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 2,
  kExitInternal = 3,
  kExitCorrespondence = 4,
  kExitProperty = 5,
  kExitCacheCorruption = 6,
};

/// Nondecreasing tuples of m partitions from the 2 x (n-2) box.
std::vector<std::vector<Partition2>> insertion_multisets(int n, int m);

/// The multisets whose codimension equals dim M_{0,m}(Gr(2,n), d).
std::vector<std::vector<Partition2>> matched_multisets(int n, int d, int m);

/// Fills defaults and checks ranges; throws ConfigError, InvalidPartition or
/// InvalidDimension.
JobConfig normalized(JobConfig c);

/// Runs one command. Property failures are recorded in the report rather
/// than thrown; internal errors propagate.
Report run_job(const JobConfig& config);

/// Exit code for a finished report (0, 4 or 5).
int exit_code(const Report& report);

/// Full command line handling: parses argv, runs the job, prints the report
/// to out and diagnostics to err, and returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gw
