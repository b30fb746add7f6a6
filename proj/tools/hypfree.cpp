// hypfree: command-line front end.
//
//   hypfree chi    <file> | --fixture NAME   [--json]
//   hypfree count  <file> | --fixture NAME   [--k K] [--json]
//   hypfree free   <file> | --fixture NAME   [--json]
//   hypfree census --q Q [--e E] [--ell L] --mode M [--n N --seed S] [--threads T] [--out-dir DIR]
//
// Exit codes: free 0 = free, 1 = not free, 2 = undetermined; chi and count
// 1 on DISAGREE; census 1 when a finding was recorded; 3 on usage or input
// errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hypfree/hypfree.hpp"

namespace {

constexpr int kUsageError = 3;

struct FieldFlags {
  std::uint64_t q = 2;
  unsigned e = 1;
  std::size_t ell = 3;
};

hypfree::FieldPtr field_from(const FieldFlags& ff) {
  const auto [p, a] = hypfree::split_prime_power(ff.q);
  return hypfree::make_field(p, a * ff.e);
}

hypfree::Arrangement load(const std::string& file, const std::string& fixture, const FieldFlags& ff) {
  if (!fixture.empty()) {
    if (fixture == "ziegler") return hypfree::ziegler_example(hypfree::make_field(3, 1));
    if (fixture == "all") return hypfree::all_hyperplanes(field_from(ff), ff.ell);
    if (fixture == "boolean") return hypfree::boolean_arrangement(field_from(ff), ff.ell);
    throw hypfree::Error(hypfree::Errc::Parse, "unknown fixture '" + fixture + "' (ziegler, all, boolean)");
  }
  if (file.empty()) throw hypfree::Error(hypfree::Errc::Parse, "an arrangement file or --fixture is required");
  std::ifstream in(file);
  if (!in) throw hypfree::Error(hypfree::Errc::Parse, "cannot open " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return hypfree::parse_arrangement(ss.str());
}

void add_source(CLI::App* cmd, std::string& file, std::string& fixture, FieldFlags& ff, bool& as_json) {
  cmd->add_option("file", file, "arrangement file");
  cmd->add_option("--fixture", fixture, "built-in arrangement: ziegler, all, boolean");
  cmd->add_option("--q", ff.q, "field size for fixtures");
  cmd->add_option("--e", ff.e, "extension degree over F_q");
  cmd->add_option("--ell", ff.ell, "dimension for fixtures");
  cmd->add_flag("--json", as_json, "JSON output");
}

int cmd_chi(const hypfree::Arrangement& arr, bool as_json) {
  const auto r = hypfree::chi_report(arr);
  if (as_json) std::cout << hypfree::to_json(r).dump(2) << "\n";
  else std::cout << hypfree::render_text(r);
  return r.agree() ? 0 : 1;
}

int cmd_count(const hypfree::Arrangement& arr, unsigned k, bool as_json) {
  const auto chi = hypfree::char_poly(arr);
  const auto ev = hypfree::evaluate_with_oracles(arr, chi, k);
  if (as_json) {
    std::cout << hypfree::to_json(ev).dump(2) << "\n";
  } else {
    std::cout << "k=" << k << " t=" << ev.t << ": extension " << hypfree::optional_count(ev.extension)
              << " / tuples " << hypfree::optional_count(ev.tuples) << " / polynomial " << ev.polynomial << "  "
              << (ev.agree() ? "AGREE" : "DISAGREE") << "\n";
  }
  return ev.agree() ? 0 : 1;
}

int cmd_free(const hypfree::Arrangement& arr, std::size_t max_unknowns, bool as_json) {
  hypfree::FreenessOptions opts;
  opts.max_unknowns = max_unknowns;
  const auto r = hypfree::decide_freeness(arr, opts);
  if (as_json) std::cout << hypfree::to_json(r, arr.field()).dump(2) << "\n";
  else std::cout << hypfree::render_text(r, arr);
  switch (r.verdict) {
    case hypfree::Verdict::Free: return 0;
    case hypfree::Verdict::NotFree: return 1;
    case hypfree::Verdict::Undetermined: return 2;
  }
  return 2;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hypfree::Error(hypfree::Errc::Parse, "cannot write " + path.string());
  out << text;
}

int cmd_census(hypfree::CensusSpec spec, const FieldFlags& ff, const std::string& mode, const std::string& out_dir,
               bool as_json) {
  const auto [p, a] = hypfree::split_prime_power(ff.q);
  spec.p = p;
  spec.e = a * ff.e;
  spec.ell = ff.ell;
  spec.mode = hypfree::parse_mode(mode);
  const auto res = hypfree::run_census(spec);
  const auto summary = hypfree::to_json(res.summary);
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    // Findings from an earlier run in the same directory would be misleading.
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (name.starts_with("finding_") && name.ends_with(".arr")) std::filesystem::remove(entry.path());
    }
    write_file(dir / "census.tsv", hypfree::census_tsv(res));
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    for (std::size_t i = 0; i < res.summary.findings.size(); ++i) {
      const auto& f = res.summary.findings[i];
      write_file(dir / ("finding_" + std::to_string(i) + ".arr"),
                 "# " + f.kind + ": " + f.detail + "\n# " + f.command + "\n" + f.arrangement);
    }
  }
  if (as_json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    const auto& s = res.summary;
    std::cout << "census q=" << s.q << " ell=" << s.ell << " mode=" << hypfree::mode_name(s.mode) << ": " << s.records
              << " records\n";
    std::cout << "oracle disagreements " << s.oracle_disagreements << ", classification violations "
              << s.classification_violations << ", lemma violations " << s.lemma_violations
              << ", theorem violations " << s.theorem_violations << ", undetermined " << s.undetermined << "\n";
    if (s.addition_deletion_pairs) {
      std::cout << "addition-deletion pairs " << s.addition_deletion_pairs << ", violations "
                << s.addition_deletion_violations << ", recursion violations " << s.recursion_violations << "\n";
    }
    std::cout << "size  total  free\n";
    for (const auto& [n, total] : s.total_by_size) {
      const auto it = s.free_by_size.find(n);
      std::cout << n << "  " << total << "  " << (it == s.free_by_size.end() ? 0 : it->second) << "\n";
    }
    std::cout << "findings " << s.findings.size() << "\n";
    for (const auto& f : s.findings) std::cout << "  " << f.kind << " " << f.id << ": " << f.detail << "\n";
  }
  return res.summary.findings.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic polynomials, point counts and freeness of hyperplane arrangements over finite fields"};
  app.require_subcommand(1);

  std::string file;
  std::string fixture;
  FieldFlags ff;
  bool as_json = false;
  unsigned k = 1;
  std::size_t max_unknowns = 20000;

  auto* chi = app.add_subcommand("chi", "characteristic polynomial with counting cross-checks");
  add_source(chi, file, fixture, ff, as_json);

  auto* count = app.add_subcommand("count", "complement counts over F_{q^k}");
  add_source(count, file, fixture, ff, as_json);
  count->add_option("--k", k, "extension degree")->check(CLI::PositiveNumber);

  auto* freec = app.add_subcommand("free", "decide freeness of D(A)");
  add_source(freec, file, fixture, ff, as_json);
  freec->add_option("--max-unknowns", max_unknowns, "generator-scan budget per degree");

  hypfree::CensusSpec spec;
  std::string mode = "exhaustive";
  std::string out_dir;
  std::size_t max_size = 0;
  auto* census = app.add_subcommand("census", "classify subarrangements of A_all");
  census->add_option("--q", ff.q, "field size")->required();
  census->add_option("--e", ff.e, "extension degree over F_q");
  census->add_option("--ell", ff.ell, "dimension");
  census->add_option("--mode", mode, "exhaustive, orbit-reduced or sample");
  census->add_option("--n", spec.n, "sample size");
  census->add_option("--seed", spec.seed, "sample seed");
  census->add_option("--threads", spec.threads, "worker threads")->check(CLI::PositiveNumber);
  census->add_option("--min-size", spec.min_size, "smallest |A|");
  census->add_option("--max-size", max_size, "largest |A|");
  census->add_option("--out-dir", out_dir, "directory for census.tsv, summary.json and findings");
  census->add_flag("--json", as_json, "print the summary as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*census) {
      if (max_size) spec.max_size = max_size;
      return cmd_census(spec, ff, mode, out_dir, as_json);
    }
    const auto arr = load(file, fixture, ff);
    if (*chi) return cmd_chi(arr, as_json);
    if (*count) return cmd_count(arr, k, as_json);
    return cmd_free(arr, max_unknowns, as_json);
  } catch (const hypfree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
