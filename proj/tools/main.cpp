#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ucslab/driver.hpp"
#include "ucslab/report.hpp"

namespace {

using namespace ucslab;

// Exit codes: 0 success, 1 mathematical counterexample, 2 usage/config
// error, 3 environment error (I/O, checkpoint), 4 empty class.
enum ExitCode { kOk = 0, kCounterexample = 1, kUsage = 2, kEnvironment = 3, kEmptyClass = 4 };

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& body) const {
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << body;
  }
};

std::string resolve_out(const std::string& out, const std::string& out_dir) {
  if (out.empty() || out_dir.empty()) return out;
  const std::filesystem::path p(out);
  return p.is_absolute() ? out : (std::filesystem::path(out_dir) / p).string();
}

RunManifest make_manifest(const std::string& command_line, const std::string& config, int n,
                          const std::string& strategy, int workers) {
  RunManifest m;
  m.command_line = command_line;
  m.config = config;
  m.start_time = now_iso8601();
  m.n = n;
  m.strategy = strategy;
  m.workers = workers;
  return m;
}

void finish_manifest(RunManifest& m, const std::string& out_path) {
  m.end_time = now_iso8601();
  if (!out_path.empty()) {
    std::ofstream out(out_path + ".manifest.json", std::ios::trunc);
    if (out) out << m.to_json_string() << "\n";
  }
}

std::pair<int, int> parse_n_range(const std::string& spec) {
  const auto dots = spec.find("..");
  int lo, hi;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(spec);
    } else {
      lo = std::stoi(spec.substr(0, dots));
      hi = std::stoi(spec.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("bad n range: " + spec);
  }
  if (lo < 1 || hi > kMaxExhaustiveN || lo > hi)
    throw CLI::ValidationError("n range must lie within 1.." +
                               std::to_string(kMaxExhaustiveN));
  return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"union-closed family enumeration and conjecture verification"};
  app.require_subcommand(1);
  app.set_config("--config")->envname("UCSLAB_CONFIG");

  int max_n = kMaxExhaustiveN;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  std::string out_dir;
  app.add_option("--max-n", max_n, "largest allowed ground-set size")
      ->envname("UCSLAB_MAX_N");
  app.add_option("--workers", workers, "worker thread count")->envname("UCSLAB_WORKERS");
  app.add_option("--out-dir", out_dir, "directory for relative output paths")
      ->envname("UCSLAB_OUT_DIR");

  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "dump all families on n elements");
  int en_n = 1;
  std::string en_strategy = "recursive", en_out;
  bool en_canonical = false;
  enumerate->add_option("--n", en_n, "ground-set size")->required();
  enumerate->add_option("--strategy", en_strategy, "recursive|filter");
  enumerate->add_flag("--canonical", en_canonical, "dump canonical representatives");
  enumerate->add_option("--out", en_out, "output path (default stdout)");

  // constant
  auto* constant = app.add_subcommand("constant", "empirical extremal constant");
  int co_n = 1, co_k = 1, co_l = 1;
  std::string co_class = "all", co_out;
  constant->add_option("--n", co_n)->required();
  constant->add_option("--k", co_k)->required();
  constant->add_option("--l", co_l)->required();
  constant->add_option("--class", co_class, "all|separated|weakly_separated");
  constant->add_option("--out", co_out, "output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "verify the conjectured bound over a class");
  int ve_n = 1, ve_k = 0, ve_l = 0;
  bool ve_all_orders = false, ve_canonical = false, ve_labeled = false;
  std::string ve_variant = "", ve_checkpoint, ve_out;
  std::uint64_t ve_max_slices = 0;
  verify->add_option("--n", ve_n)->required();
  verify->add_option("--k", ve_k);
  verify->add_option("--l", ve_l);
  verify->add_flag("--all-orders", ve_all_orders, "all k <= n, l <= k, both variants");
  verify->add_option("--variant", ve_variant, "standard|strong|both");
  verify->add_flag("--canonical", ve_canonical, "scan canonical representatives only");
  verify->add_flag("--labeled", ve_labeled, "force labeled scanning (n=5 defaults to canonical)");
  verify->add_option("--checkpoint", ve_checkpoint, "checkpoint path for resumable runs");
  verify->add_option("--max-slices", ve_max_slices,
                     "stop after this many work slices (testing hook)");
  verify->add_option("--out", ve_out, "output path (default stdout)");

  // audit
  auto* audit = app.add_subcommand("audit", "exact binomial inequality audit");
  int au_max_k = 30;
  std::string au_out;
  audit->add_option("--max-k", au_max_k, "largest k (<= 30)");
  audit->add_option("--out", au_out, "output path (default stdout)");

  // table
  auto* table = app.add_subcommand("table", "combined constants table");
  std::string ta_range, ta_format = "csv", ta_out;
  table->add_option("--n", ta_range, "n range, e.g. 1..3")->required();
  table->add_option("--format", ta_format, "csv|json");
  table->add_option("--out", ta_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  try {
    if (*enumerate) {
      if (en_n < 1 || en_n > max_n)
        throw std::invalid_argument("n out of range 1.." + std::to_string(max_n));
      const Strategy strategy = strategy_from_name(en_strategy);
      std::ostringstream body;
      std::uint64_t labeled = 0;
      if (en_canonical) {
        std::uint64_t orbit_sum = 0, classes = 0;
        for (const auto& cf : enumerate_canonical(en_n)) {
          body << cf.representative.to_text() << "\n";
          orbit_sum += cf.orbit_size;
          ++classes;
        }
        labeled = orbit_sum;
        std::cerr << "labeled=" << orbit_sum << " classes=" << classes << " n=" << en_n
                  << "\n";
      } else {
        const auto families = enumerate_families(en_n, strategy);
        for (const auto& f : families) body << f.to_text() << "\n";
        labeled = families.size();
        std::cerr << "labeled=" << labeled << " n=" << en_n << "\n";
      }
      const std::string out_path = resolve_out(en_out, out_dir);
      Output{out_path}.write(body.str());
      auto manifest = make_manifest(command_line,
                                    "cmd=enumerate n=" + std::to_string(en_n) +
                                        " strategy=" + en_strategy +
                                        " canonical=" + (en_canonical ? "1" : "0"),
                                    en_n, en_strategy, 1);
      manifest.families_scanned = labeled;
      finish_manifest(manifest, out_path);
      return kOk;
    }

    if (*constant) {
      if (co_n < 1 || co_n > max_n)
        throw std::invalid_argument("n out of range 1.." + std::to_string(max_n));
      const FamilyClassSelector sel{family_class_from_name(co_class),
                                    SeparationParams(co_k, co_l)};
      auto manifest = make_manifest(
          command_line,
          "cmd=constant n=" + std::to_string(co_n) + " k=" + std::to_string(co_k) +
              " l=" + std::to_string(co_l) + " class=" + family_class_name(sel.kind),
          co_n, "recursive", workers);
      const ConstantReport report = run_constant_parallel(co_n, sel, workers);
      manifest.families_scanned = report.families_scanned;
      manifest.verdicts = report.verdict;
      const std::string out_path = resolve_out(co_out, out_dir);
      Output{out_path}.write(to_json(report, manifest.hash()).dump() + "\n");
      finish_manifest(manifest, out_path);
      return kOk;
    }

    if (*verify) {
      if (ve_n < 1 || ve_n > max_n)
        throw std::invalid_argument("n out of range 1.." + std::to_string(max_n));
      std::vector<VerifyJobSpec> jobs;
      if (ve_all_orders) {
        if (ve_variant.empty()) ve_variant = "both";
        for (int k = 1; k <= ve_n; ++k)
          for (int l = 1; l <= k; ++l) {
            if (ve_variant == "standard" || ve_variant == "both")
              jobs.push_back({ve_n, k, l, Variant::standard});
            if (ve_variant == "strong" || ve_variant == "both")
              jobs.push_back({ve_n, k, l, Variant::strong});
          }
      } else {
        if (ve_k == 0 || ve_l == 0)
          throw std::invalid_argument("provide --k and --l, or --all-orders");
        if (ve_variant.empty()) ve_variant = "standard";
        if (ve_variant == "standard" || ve_variant == "both")
          jobs.push_back({ve_n, ve_k, ve_l, Variant::standard});
        if (ve_variant == "strong" || ve_variant == "both")
          jobs.push_back({ve_n, ve_k, ve_l, Variant::strong});
        if (jobs.empty()) throw std::invalid_argument("unknown variant: " + ve_variant);
      }

      // n=5 defaults to canonical-representative scanning
      const bool canonical = ve_canonical || (ve_n == 5 && !ve_labeled);
      VerifyDriver driver(ve_n, workers, canonical, ve_checkpoint);
      if (ve_max_slices > 0) driver.set_slice_budget(ve_max_slices);

      auto manifest = make_manifest(
          command_line,
          "cmd=verify n=" + std::to_string(ve_n) + " k=" + std::to_string(ve_k) +
              " l=" + std::to_string(ve_l) + " all_orders=" + (ve_all_orders ? "1" : "0") +
              " variant=" + ve_variant + " canonical=" + (canonical ? "1" : "0"),
          ve_n, "recursive", workers);

      const VerifyRunResult result = driver.run(jobs);
      std::ostringstream body;
      bool any_fail = false;
      for (const auto& report : result.reports) {
        body << to_json(report, manifest.hash()).dump() << "\n";
        if (!report.pass) any_fail = true;
        manifest.families_scanned += report.families_scanned;
      }
      manifest.classes = result.reports.size();
      manifest.verdicts = any_fail ? "counterexample" : "pass";
      const std::string out_path = resolve_out(ve_out, out_dir);
      Output{out_path}.write(body.str());
      finish_manifest(manifest, out_path);
      if (result.interrupted) {
        std::cerr << "interrupted by slice budget; resume with the same flags and checkpoint\n";
        return kEnvironment;
      }
      return any_fail ? kCounterexample : kOk;
    }

    if (*audit) {
      auto manifest = make_manifest(command_line, "cmd=audit max_k=" + std::to_string(au_max_k),
                                    0, "-", 1);
      const AuditReport report = audit_binomial(au_max_k);
      manifest.verdicts = report.passed() ? "pass" : "failures";
      const std::string out_path = resolve_out(au_out, out_dir);
      Output{out_path}.write(to_json(report, manifest.hash()).dump() + "\n");
      finish_manifest(manifest, out_path);
      return report.passed() ? kOk : kCounterexample;
    }

    if (*table) {
      const auto [lo, hi] = parse_n_range(ta_range);
      if (hi > max_n) throw std::invalid_argument("n range exceeds --max-n");
      if (ta_format != "csv" && ta_format != "json")
        throw std::invalid_argument("format must be csv or json");
      auto manifest = make_manifest(
          command_line, "cmd=table n=" + ta_range + " format=" + ta_format, hi, "recursive",
          workers);
      std::ostringstream body;
      nlohmann::json rows = nlohmann::json::array();
      if (ta_format == "csv") body << kConstantCsvHeader << "\n";
      for (int n = lo; n <= hi; ++n)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= k; ++l)
            for (const FamilyClass kind :
                 {FamilyClass::all, FamilyClass::separated, FamilyClass::weakly_separated}) {
              const FamilyClassSelector sel{kind, SeparationParams(k, l)};
              const ConstantReport report = run_constant_parallel(n, sel, workers);
              manifest.families_scanned += report.families_scanned;
              if (ta_format == "csv")
                body << constant_csv_row(report, manifest.hash()) << "\n";
              else
                rows.push_back(to_json(report, manifest.hash()));
            }
      if (ta_format == "json") body << rows.dump(2) << "\n";
      const std::string out_path = resolve_out(ta_out, out_dir);
      Output{out_path}.write(body.str());
      finish_manifest(manifest, out_path);
      return kOk;
    }
  } catch (const EmptyClassError& e) {
    std::cerr << "empty class: " << e.what() << "\n";
    return kEmptyClass;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return kEnvironment;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kEnvironment;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
