#include "ucslab/driver.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ucslab/report.hpp"

namespace ucslab {
namespace {

using nlohmann::json;

constexpr std::size_t kSliceCount = 64;
constexpr std::size_t kCheckpointEvery = 8;  // slices between checkpoint writes

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::pair<std::size_t, std::size_t> slice_bounds(std::size_t total, std::size_t i) {
  return {total * i / kSliceCount, total * (i + 1) / kSliceCount};
}

json partial_to_json(const ScanPartial& p) {
  return json{{"in_class", p.in_class},
              {"labeled", p.labeled},
              {"has_min", p.has_min},
              {"min_cover", p.min_cover},
              {"min_members", p.min_members},
              {"min_witness", p.min_witness},
              {"min_witness_s", p.min_witness_s},
              {"has_counterexample", p.has_counterexample},
              {"counterexample", p.counterexample}};
}

ScanPartial partial_from_json(const json& j) {
  ScanPartial p;
  p.in_class = j.at("in_class");
  p.labeled = j.at("labeled");
  p.has_min = j.at("has_min");
  p.min_cover = j.at("min_cover");
  p.min_members = j.at("min_members");
  p.min_witness = j.at("min_witness");
  p.min_witness_s = j.at("min_witness_s");
  p.has_counterexample = j.at("has_counterexample");
  p.counterexample = j.at("counterexample");
  return p;
}

json job_to_json(const VerifyJobSpec& job) {
  return json{{"n", job.n}, {"k", job.k}, {"l", job.l}, {"variant", variant_name(job.variant)}};
}

struct CheckpointState {
  std::size_t current_job = 0;
  std::vector<VerifyReport> completed;
  std::vector<std::optional<ScanPartial>> partials;  // for the current job

  CheckpointState() : partials(kSliceCount) {}
};

void write_checkpoint(const std::string& path, int n, bool canonical,
                      const std::vector<VerifyJobSpec>& jobs, const CheckpointState& state) {
  json jobs_json = json::array();
  for (const auto& job : jobs) jobs_json.push_back(job_to_json(job));
  json completed = json::array();
  for (const auto& r : state.completed) completed.push_back(to_json(r));
  json partials = json::object();
  for (std::size_t i = 0; i < kSliceCount; ++i)
    if (state.partials[i]) partials[std::to_string(i)] = partial_to_json(*state.partials[i]);

  const json token{{"canonical", canonical},
                   {"slices", kSliceCount},
                   {"jobs", jobs_json},
                   {"current_job", state.current_job},
                   {"completed_reports", completed},
                   {"partials", partials}};

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint: " + path);
    out << "ucslab-checkpoint v" << kArtifactFormatVersion << " n=" << n
        << " strategy=recursive\n";
    out << token.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

CheckpointState load_checkpoint(const std::string& path, int n, bool canonical,
                                const std::vector<VerifyJobSpec>& jobs) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot read checkpoint: " + path);
  std::string header, body;
  std::getline(in, header);
  std::getline(in, body);

  std::stringstream hs(header);
  std::string magic, version, nfield, sfield;
  hs >> magic >> version >> nfield >> sfield;
  if (magic != "ucslab-checkpoint")
    throw CheckpointError("not a checkpoint file: " + path);
  if (version != "v" + std::to_string(kArtifactFormatVersion))
    throw CheckpointError("unsupported checkpoint version: " + version);
  if (nfield != "n=" + std::to_string(n) || sfield != "strategy=recursive")
    throw CheckpointError("checkpoint does not match this run");

  json token;
  try {
    token = json::parse(body);
  } catch (const json::exception&) {
    throw CheckpointError("corrupt checkpoint token");
  }

  CheckpointState state;
  try {
    if (token.at("canonical") != canonical || token.at("slices") != kSliceCount)
      throw CheckpointError("checkpoint does not match this run");
    json jobs_json = json::array();
    for (const auto& job : jobs) jobs_json.push_back(job_to_json(job));
    if (token.at("jobs") != jobs_json)
      throw CheckpointError("checkpoint job list does not match this run");
    state.current_job = token.at("current_job");
    for (const auto& r : token.at("completed_reports"))
      state.completed.push_back(verify_report_from_json(r));
    for (const auto& [key, value] : token.at("partials").items())
      state.partials[std::stoul(key)] = partial_from_json(value);
  } catch (const json::exception&) {
    throw CheckpointError("corrupt checkpoint token");
  }
  return state;
}

}  // namespace

std::string RunManifest::hash() const {
  std::ostringstream payload;
  payload << config << "|format=" << format_version;
  std::ostringstream hex;
  hex << std::hex << fnv1a(payload.str());
  return hex.str();
}

std::string RunManifest::to_json_string() const {
  return json{{"command_line", command_line},
              {"config", config},
              {"start_time", start_time},
              {"end_time", end_time},
              {"n", n},
              {"strategy", strategy},
              {"workers", workers},
              {"families_scanned", families_scanned},
              {"classes", classes},
              {"verdicts", verdicts},
              {"format_version", format_version},
              {"manifest_hash", hash()}}
      .dump(2);
}

VerifyDriver::VerifyDriver(int n, int workers, bool canonical, std::string checkpoint_path)
    : n_(n), workers_(workers < 1 ? 1 : workers), canonical_(canonical),
      checkpoint_path_(std::move(checkpoint_path)) {}

VerifyRunResult VerifyDriver::run(const std::vector<VerifyJobSpec>& jobs) {
  for (const auto& job : jobs) {
    if (job.n != n_) throw std::invalid_argument("job n does not match driver n");
    // validate scan parameters here; a throw inside a worker would terminate
    scan_class({}, n_, {FamilyClass::all, SeparationParams(job.k, job.l)});
  }

  auto words = enumerate_family_words(n_, Strategy::recursive);
  std::vector<std::uint64_t> weights;
  if (canonical_) {
    // Reduce to canonical representatives once; every scanned quantity is
    // permutation-equivariant and labeled totals come back via orbit sizes.
    const PermutationTables pt(n_);
    std::vector<FamilyWord> reps;
    for (FamilyWord w : words) {
      if (pt.canonicalize(w) != w) continue;
      reps.push_back(w);
      weights.push_back(pt.orbit_size(w));
    }
    words = std::move(reps);
  }

  CheckpointState state;
  if (!checkpoint_path_.empty() && std::filesystem::exists(checkpoint_path_))
    state = load_checkpoint(checkpoint_path_, n_, canonical_, jobs);

  std::uint64_t budget = slice_budget_;
  VerifyRunResult result;
  result.reports = state.completed;

  for (std::size_t job_idx = state.current_job; job_idx < jobs.size(); ++job_idx) {
    const VerifyJobSpec& job = jobs[job_idx];
    const SeparationParams p(job.k, job.l);
    const FamilyClassSelector sel{
        job.variant == Variant::standard ? FamilyClass::separated
                                         : FamilyClass::weakly_separated,
        p};

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < kSliceCount; ++i)
      if (!state.partials[i]) todo.push_back(i);

    const std::uint64_t quota = std::min<std::uint64_t>(budget, todo.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> finished{0};
    std::mutex mu;

    auto worker = [&]() {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= quota) return;
        const std::size_t slice = todo[t];
        const auto [lo, hi] = slice_bounds(words.size(), slice);
        const std::span<const std::uint64_t> weight_span =
            weights.empty() ? std::span<const std::uint64_t>{}
                            : std::span<const std::uint64_t>(weights.data() + lo, hi - lo);
        ScanPartial part = scan_class(
            std::span<const FamilyWord>(words.data() + lo, hi - lo), n_, sel, weight_span);
        std::lock_guard<std::mutex> lock(mu);
        state.partials[slice] = part;
        const std::size_t done = ++finished;
        if (!checkpoint_path_.empty() && done % kCheckpointEvery == 0)
          write_checkpoint(checkpoint_path_, n_, canonical_, jobs, state);
      }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers_; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    budget -= quota;

    if (quota < todo.size()) {
      // out of budget mid-job: persist and report interruption
      if (!checkpoint_path_.empty())
        write_checkpoint(checkpoint_path_, n_, canonical_, jobs, state);
      result.interrupted = true;
      return result;
    }

    ScanPartial merged;
    for (std::size_t i = 0; i < kSliceCount; ++i) merge_scan(merged, *state.partials[i]);
    result.reports.push_back(build_verify_report(n_, p, job.variant, merged));

    state.completed.push_back(result.reports.back());
    state.current_job = job_idx + 1;
    state.partials.assign(kSliceCount, std::nullopt);
    if (!checkpoint_path_.empty())
      write_checkpoint(checkpoint_path_, n_, canonical_, jobs, state);
  }
  return result;
}

ConstantReport run_constant_parallel(int n, FamilyClassSelector sel, int workers) {
  if (workers < 1) workers = 1;
  scan_class({}, n, sel);  // validate before spawning workers
  const auto words = enumerate_family_words(n, Strategy::recursive);
  std::vector<ScanPartial> partials(kSliceCount);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= kSliceCount) return;
      const auto [lo, hi] = slice_bounds(words.size(), i);
      partials[i] = scan_class(std::span<const FamilyWord>(words.data() + lo, hi - lo), n, sel);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  ScanPartial merged;
  for (const auto& part : partials) merge_scan(merged, part);
  return build_constant_report(n, sel, merged);
}

}  // namespace ucslab
