#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucslab/analysis.hpp"

namespace ucslab {

inline constexpr int kArtifactFormatVersion = 1;

/// Rejected, corrupt, or version-mismatched checkpoint files.
struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Run metadata attached to every output.  The hash covers everything
/// except the timestamps, so reruns with identical configuration produce
/// identical result bodies.
struct RunManifest {
  std::string command_line;
  std::string config;  // canonical "key=value key=value" snapshot
  std::string start_time, end_time;
  int n = 0;
  std::string strategy;
  int workers = 1;
  std::uint64_t families_scanned = 0;
  std::uint64_t classes = 0;
  std::string verdicts;
  int format_version = kArtifactFormatVersion;

  std::string hash() const;
  std::string to_json_string() const;
};

struct VerifyJobSpec {
  int n;
  int k, l;
  Variant variant;
};

struct VerifyRunResult {
  std::vector<VerifyReport> reports;  // one per completed job, in job order
  bool interrupted = false;           // stopped early by the slice budget
};

/// Parallel, checkpointable verification driver.  The enumeration stream is
/// split into fixed slices; workers claim slices through a shared counter
/// and results merge by slice index, so the outcome is independent of the
/// worker count and completion order.
class VerifyDriver {
 public:
  VerifyDriver(int n, int workers, bool canonical, std::string checkpoint_path = "");

  /// Caps the number of slices processed in this invocation, then writes a
  /// checkpoint and reports `interrupted`.  Used to exercise resume.
  void set_slice_budget(std::uint64_t budget) { slice_budget_ = budget; }

  VerifyRunResult run(const std::vector<VerifyJobSpec>& jobs);

 private:
  int n_;
  int workers_;
  bool canonical_;
  std::string checkpoint_path_;
  std::uint64_t slice_budget_ = UINT64_MAX;
};

/// Parallel empirical-constant run; identical output to empirical_constant.
ConstantReport run_constant_parallel(int n, FamilyClassSelector sel, int workers);

}  // namespace ucslab
