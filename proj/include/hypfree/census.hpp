#pragma once

// Census engine: enumerate (or sample) subarrangements of A_all(F_q^ell),
// classify each one with every oracle, and collect any disagreement as a
// finding with enough data to reproduce it.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hypfree/arrangement.hpp"
#include "hypfree/counting.hpp"
#include "hypfree/derivations.hpp"
#include "hypfree/error.hpp"
#include "hypfree/harness.hpp"
#include "hypfree/io.hpp"
#include "hypfree/lattice.hpp"

namespace hypfree {

enum class CensusMode { Exhaustive, OrbitReduced, Sample };

inline std::string_view mode_name(CensusMode m) {
  switch (m) {
    case CensusMode::Exhaustive: return "exhaustive";
    case CensusMode::OrbitReduced: return "orbit-reduced";
    case CensusMode::Sample: return "sample";
  }
  return "?";
}

inline CensusMode parse_mode(const std::string& s) {
  if (s == "exhaustive") return CensusMode::Exhaustive;
  if (s == "orbit-reduced" || s == "orbit") return CensusMode::OrbitReduced;
  if (s == "sample") return CensusMode::Sample;
  throw Error(Errc::Parse, "unknown census mode '" + s + "'");
}

struct CensusSpec {
  std::uint64_t p = 2;
  unsigned e = 1;
  std::size_t ell = 3;
  CensusMode mode = CensusMode::Exhaustive;
  std::size_t n = 1000;        // sample size
  std::uint64_t seed = 0;
  std::size_t min_size = 0;
  std::optional<std::size_t> max_size;
  unsigned threads = 1;
  /// Largest number of subsets an exhaustive run may visit.
  std::uint64_t exhaustive_ceiling = std::uint64_t{1} << 16;
  /// Largest subset space the orbit reduction may hold in memory.
  std::uint64_t orbit_ceiling = std::uint64_t{1} << 22;
  /// Generator-scan budget (unknowns per graded piece).
  std::size_t max_unknowns = 20000;
  /// Check addition-deletion on every (A, H) pair after an exhaustive run.
  bool addition_deletion = true;
};

struct ClassificationRecord {
  std::vector<std::uint32_t> indices;  // positions in A_all, ascending
  std::string id;
  std::size_t size = 0;
  std::size_t rank = 0;
  CharPoly chi;
  std::optional<std::vector<std::int64_t>> roots;
  std::int64_t chi_q = 0;
  std::int64_t chi_q2 = 0;
  std::uint64_t count_k1 = 0;  // extension count, k = 1
  std::uint64_t tuples_k1 = 0;
  std::uint64_t count_k2 = 0;
  std::uint64_t tuples_k2 = 0;
  Verdict verdict = Verdict::Undetermined;
  std::vector<std::size_t> exponents;
  CertificateKind certificate = CertificateKind::None;
  std::vector<std::size_t> generator_degrees;
  SizeClause clause = SizeClause::NotApplicable;
  std::optional<Verdict> predicted;
  std::uint64_t orbit_size = 1;
  std::string exponent_pattern;  // free and |A| >= 2q only
  std::vector<std::string> flags;  // kinds of findings raised on this record
};

struct Finding {
  std::string kind;
  std::string id;
  std::string detail;
  std::string arrangement;  // file contents reproducing the instance
  std::string command;
};

struct CensusSummary {
  std::uint64_t p = 0;
  unsigned e = 0;
  std::uint64_t q = 0;
  std::size_t ell = 0;
  CensusMode mode = CensusMode::Exhaustive;
  std::size_t requested = 0;
  std::uint64_t seed = 0;
  std::size_t records = 0;
  std::uint64_t arrangements_covered = 0;  // sum of orbit sizes
  std::size_t oracle_disagreements = 0;
  std::size_t classification_violations = 0;
  std::size_t lemma_violations = 0;
  std::size_t theorem_violations = 0;
  std::size_t undetermined = 0;
  std::size_t addition_deletion_pairs = 0;
  std::size_t addition_deletion_violations = 0;
  std::size_t recursion_violations = 0;
  bool all_hyperplanes_saito = true;
  std::map<std::size_t, std::size_t> total_by_size;
  std::map<std::size_t, std::size_t> free_by_size;
  std::map<std::string, std::size_t> exponent_patterns;
  std::map<std::string, std::size_t> verdicts;
  std::vector<Finding> findings;
};

struct CensusResult {
  std::vector<ClassificationRecord> records;
  CensusSummary summary;
};

// ---------------------------------------------------------------------------
// GL(ell, q) action on hyperplane indices

/// Elementary transvections I + c E_ij (all c != 0) and diag(g, 1, ..., 1)
/// for a primitive g; together they generate GL(ell, q).
inline std::vector<Mat> gl_generators(const FieldCtx& f, std::size_t ell) {
  std::vector<Mat> gens;
  auto identity = [&] {
    Mat m(ell, Vec(ell, 0));
    for (std::size_t i = 0; i < ell; ++i) m[i][i] = 1;
    return m;
  };
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j < ell; ++j) {
      if (i == j) continue;
      for (Elem c = 1; c < f.cardinality(); ++c) {
        Mat m = identity();
        m[i][j] = c;
        gens.push_back(std::move(m));
      }
    }
  }
  if (f.cardinality() > 2) {
    Elem g = 0;
    for (Elem c = 2; c < f.cardinality() && !g; ++c) {
      std::uint64_t order = 1;
      Elem x = c;
      while (x != 1) {
        x = f.mul(x, c);
        ++order;
      }
      if (order == f.cardinality() - 1) g = c;
    }
    Mat m = identity();
    m[0][0] = g;
    gens.push_back(std::move(m));
  }
  return gens;
}

/// Row vector times matrix.
inline Vec act(const FieldCtx& f, const Vec& v, const Mat& m) {
  Vec out(m[0].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) f.axpy(out, v[i], m[i]);
  }
  return out;
}

/// perm[g][i] = index of (hyperplane i) * g in A_all.
inline std::vector<std::vector<std::uint32_t>> hyperplane_permutations(const Arrangement& all,
                                                                        const std::vector<Mat>& gens) {
  const FieldCtx& f = all.field();
  std::vector<std::vector<std::uint32_t>> perms;
  for (const auto& g : gens) {
    std::vector<std::uint32_t> perm(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto h = Hyperplane::from_covector(f, act(f, all[i].covector(), g));
      perm[i] = static_cast<std::uint32_t>(all.index_of(h));
    }
    perms.push_back(std::move(perm));
  }
  return perms;
}

namespace detail {

inline std::uint64_t permute_mask(std::uint64_t mask, const std::vector<std::uint32_t>& perm) {
  std::uint64_t out = 0;
  while (mask) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    out |= std::uint64_t{1} << perm[static_cast<std::size_t>(i)];
  }
  return out;
}

inline bool size_in_range(std::size_t size, const CensusSpec& spec) {
  return size >= spec.min_size && (!spec.max_size || size <= *spec.max_size);
}

struct Job {
  std::uint64_t mask;
  std::uint64_t orbit_size;
};

inline std::vector<Job> exhaustive_jobs(std::size_t nplanes, const CensusSpec& spec) {
  std::uint64_t total = 0;
  if (nplanes >= 63 || !checked_pow(2, static_cast<unsigned>(nplanes), spec.exhaustive_ceiling, total)) {
    throw Error(Errc::CeilingExceeded, "2^" + std::to_string(nplanes) + " subsets exceed the exhaustive ceiling " +
                                           std::to_string(spec.exhaustive_ceiling));
  }
  std::vector<Job> jobs;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (size_in_range(static_cast<std::size_t>(std::popcount(m)), spec)) jobs.push_back({m, 1});
  }
  return jobs;
}

inline std::vector<Job> orbit_jobs(const Arrangement& all, const CensusSpec& spec) {
  const std::size_t nplanes = all.size();
  std::uint64_t total = 0;
  if (nplanes >= 32 || !checked_pow(2, static_cast<unsigned>(nplanes), spec.orbit_ceiling, total)) {
    throw Error(Errc::CeilingExceeded, "2^" + std::to_string(nplanes) + " subsets exceed the orbit ceiling " +
                                           std::to_string(spec.orbit_ceiling));
  }
  const auto perms = hyperplane_permutations(all, gl_generators(all.field(), all.ell()));
  // Union-find over masks; the root of each class is its smallest mask.
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::uint64_t m = 0; m < total; ++m) {
    if (!size_in_range(static_cast<std::size_t>(std::popcount(m)), spec)) continue;
    for (const auto& perm : perms) {
      const auto a = find(static_cast<std::uint32_t>(m));
      const auto b = find(static_cast<std::uint32_t>(permute_mask(m, perm)));
      if (a < b) parent[b] = a;
      else if (b < a) parent[a] = b;
    }
  }
  std::unordered_map<std::uint32_t, std::uint64_t> sizes;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (size_in_range(static_cast<std::size_t>(std::popcount(m)), spec)) ++sizes[find(static_cast<std::uint32_t>(m))];
  }
  std::vector<Job> jobs;
  for (const auto& [root, n] : sizes) jobs.push_back({root, n});
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.mask < b.mask; });
  return jobs;
}

inline std::vector<Job> sample_jobs(std::size_t nplanes, const CensusSpec& spec) {
  if (nplanes > 64) throw Error(Errc::CeilingExceeded, "sampling supports at most 64 hyperplanes");
  const std::uint64_t full = nplanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nplanes) - 1;
  std::mt19937_64 rng(spec.seed);
  std::set<std::uint64_t> seen;
  std::vector<Job> jobs;
  const std::uint64_t max_draws = std::max<std::uint64_t>(1000, std::uint64_t{64} * spec.n);
  for (std::uint64_t draw = 0; draw < max_draws && jobs.size() < spec.n; ++draw) {
    const std::uint64_t m = rng() & full;
    if (!size_in_range(static_cast<std::size_t>(std::popcount(m)), spec)) continue;
    if (seen.insert(m).second) jobs.push_back({m, 1});
  }
  return jobs;
}

inline Arrangement subset(const Arrangement& all, std::uint64_t mask) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (mask >> i & 1) hs.push_back(all[i]);
  }
  return Arrangement(all.field_ptr(), all.ell(), std::move(hs));
}

inline std::string exponent_string(const std::vector<std::size_t>& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
  return out + ")";
}

struct RecordOutput {
  ClassificationRecord record;
  std::vector<Finding> findings;
};

inline RecordOutput classify_one(const Arrangement& all, std::uint64_t mask, std::uint64_t orbit_size,
                                 const CensusSpec& spec) {
  const Arrangement arr = subset(all, mask);
  const std::int64_t q = arr.q();
  const std::size_t ell = arr.ell();
  RecordOutput out;
  ClassificationRecord& r = out.record;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (mask >> i & 1) r.indices.push_back(static_cast<std::uint32_t>(i));
  }
  r.id = arrangement_id(arr);
  r.size = arr.size();
  r.rank = rank(arr);
  r.orbit_size = orbit_size;

  auto flag = [&](const std::string& kind, const std::string& detail) {
    r.flags.push_back(kind);
    out.findings.push_back({kind, r.id, detail, format_arrangement(arr), ""});
  };

  FreenessOptions opts;
  opts.max_unknowns = spec.max_unknowns;
  const FreenessReport fr = decide_freeness(arr, opts);
  r.chi = fr.chi;
  r.roots = fr.roots;
  r.chi_q = r.chi.eval(q);
  r.chi_q2 = r.chi.eval(q * q);
  r.verdict = fr.verdict;
  r.exponents = fr.exponents;
  r.certificate = fr.certificate;
  r.generator_degrees = fr.generator_degrees;

  // Counting oracles.
  r.count_k1 = count_complement_extension(arr, 1);
  r.tuples_k1 = crapo_rota_count(arr, 1);
  r.count_k2 = count_complement_extension(arr, 2);
  r.tuples_k2 = crapo_rota_count(arr, 2);
  const auto direct = count_complement(arr);
  if (r.chi_q < 0 || r.chi_q2 < 0 || r.count_k1 != static_cast<std::uint64_t>(r.chi_q) || r.tuples_k1 != r.count_k1 ||
      direct != r.count_k1 || r.count_k2 != static_cast<std::uint64_t>(r.chi_q2) || r.tuples_k2 != r.count_k2) {
    flag("oracle", "chi(q)=" + std::to_string(r.chi_q) + " counts " + std::to_string(direct) + "/" +
                       std::to_string(r.count_k1) + "/" + std::to_string(r.tuples_k1) + "; chi(q^2)=" +
                       std::to_string(r.chi_q2) + " counts " + std::to_string(r.count_k2) + "/" +
                       std::to_string(r.tuples_k2));
  }

  const unsigned k_max = q == 2 ? 3 : 2;
  if (!verify_lemma_decreasing_zeros(r.chi, q, k_max) || !chi_vanishes_at_one(arr, r.chi)) {
    flag("decreasing_zeros", "chi = " + r.chi.to_string());
  }
  if (!all_characterization(arr, r.chi).agree()) flag("all_characterization", "chi = " + r.chi.to_string());

  if (!fr.terao_consistent) flag("terao", "free with exponents " + exponent_string(r.exponents) + " but chi = " +
                                              r.chi.to_string());

  if (ell == 3) {
    if (r.verdict == Verdict::Undetermined) flag("undetermined", fr.note);
    r.clause = size_clause(r.size, q, ell);
    if (r.clause != SizeClause::BelowThreshold) {
      r.predicted = predict_freeness(r.size, q, ell, r.chi).verdict;
      if (r.verdict != Verdict::Undetermined && *r.predicted != r.verdict) {
        flag("classification", "predicted " + std::string(verdict_name(*r.predicted)) + ", computed " +
                                   std::string(verdict_name(r.verdict)));
      }
    }
    const bool free = r.verdict == Verdict::Free;
    if (r.chi_q == 0) {
      std::vector<std::size_t> want{1, static_cast<std::size_t>(q), r.size - static_cast<std::size_t>(q) - 1};
      std::sort(want.begin(), want.end());
      if (!free || r.exponents != want) {
        flag("chi_zero_free", "expected free " + exponent_string(want) + ", computed " +
                                  std::string(verdict_name(r.verdict)) + " " + exponent_string(r.exponents));
      }
      if (!check_chain(supersolvable_resolution(arr), false)) flag("chain", "resolution chain failed to verify");
    }
    if (static_cast<std::int64_t>(r.size) >= 2 * q && free && r.chi_q != 0) {
      flag("free_implies_chi_zero", "free with chi(q) = " + std::to_string(r.chi_q));
    }
    if (static_cast<std::int64_t>(r.size) == 2 * q - 1 && r.chi == CharPoly::from_roots({1, q - 1, q - 1})) {
      const auto lc = line_completion(arr);
      if (!lc || !lc->valid) flag("line_completion", lc ? "completion is not free with (1,q-1,q)" : "complement is not a punctured line");
    }
    if (free && static_cast<std::int64_t>(r.size) >= 2 * q) {
      const auto n = static_cast<std::size_t>(r.size);
      const std::vector<std::size_t> main{1, static_cast<std::size_t>(q), n - static_cast<std::size_t>(q) - 1};
      const std::vector<std::size_t> boundary{1, static_cast<std::size_t>(q) - 1, static_cast<std::size_t>(q)};
      auto s = [](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        return v;
      };
      const bool is_main = r.exponents == s(main);
      const bool is_boundary = static_cast<std::int64_t>(n) == 2 * q && r.exponents == s(boundary);
      if (is_main && is_boundary) r.exponent_pattern = "(1,q,|A|-q-1)=(1,q-1,q)";
      else if (is_main) r.exponent_pattern = "(1,q,|A|-q-1)";
      else if (is_boundary) r.exponent_pattern = "(1,q-1,q)";
      else {
        r.exponent_pattern = "other";
        flag("exponent_pattern", "free with exponents " + exponent_string(r.exponents));
      }
    }
    if (r.rank == 3) {
      if (free && r.exponents.size() == 3 && (r.exponents[0] != 1 || r.exponents[1] > static_cast<std::size_t>(q))) {
        flag("second_exponent", "essential free arrangement with exponents " + exponent_string(r.exponents));
      }
      try {
        if (minimal_nontrivial_degree(arr) > static_cast<std::size_t>(q)) flag("nontrivial_degree", "above q");
      } catch (const std::logic_error&) {
        flag("nontrivial_degree", "no non-Euler logarithmic derivation up to degree q");
      }
    }
  } else if (ell == 4 && q == 2 && r.chi.eval(4) == 0) {
    const auto hd = verify_higher_dim(arr, false);
    if (!hd.ok()) flag("higher_dim", "factorization " + std::to_string(hd.factorization_ok) + " chain " +
                                         std::to_string(hd.chain_ok));
  }
  return out;
}

inline bool is_lemma_kind(const std::string& k) {
  return k == "decreasing_zeros" || k == "all_characterization" || k == "second_exponent" || k == "nontrivial_degree";
}

inline bool is_theorem_kind(const std::string& k) {
  return k == "chi_zero_free" || k == "chain" || k == "free_implies_chi_zero" || k == "line_completion" ||
         k == "exponent_pattern" || k == "terao" || k == "higher_dim";
}

}  // namespace detail

/// Runs `work(i)` for i in [0, n) over `threads` workers.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& work) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline std::string reproduction_command(const Finding& f, std::size_t index) {
  const std::string file = "finding_" + std::to_string(index) + ".arr";
  if (f.kind == "oracle" || f.kind == "decreasing_zeros" || f.kind == "all_characterization") {
    return "hypfree count " + file + " --k 2";
  }
  return "hypfree free " + file;
}

inline CensusResult run_census(const CensusSpec& spec) {
  const FieldPtr field = make_field(spec.p, spec.e);
  const Arrangement all = all_hyperplanes(field, spec.ell);
  if (all.size() > 64) throw Error(Errc::CeilingExceeded, "A_all has more than 64 hyperplanes");

  std::vector<detail::Job> jobs;
  switch (spec.mode) {
    case CensusMode::Exhaustive: jobs = detail::exhaustive_jobs(all.size(), spec); break;
    case CensusMode::OrbitReduced: jobs = detail::orbit_jobs(all, spec); break;
    case CensusMode::Sample: jobs = detail::sample_jobs(all.size(), spec); break;
  }

  std::vector<detail::RecordOutput> outputs(jobs.size());
  parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
    outputs[i] = detail::classify_one(all, jobs[i].mask, jobs[i].orbit_size, spec);
  });
  // Canonical order: lexicographic on the sorted covector list.
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return outputs[a].record.indices < outputs[b].record.indices; });

  CensusResult res;
  CensusSummary& s = res.summary;
  s.p = spec.p;
  s.e = spec.e;
  s.q = field->cardinality();
  s.ell = spec.ell;
  s.mode = spec.mode;
  s.requested = spec.mode == CensusMode::Sample ? spec.n : jobs.size();
  s.seed = spec.seed;
  s.all_hyperplanes_saito = all_hyperplanes_saito(field, spec.ell);
  if (!s.all_hyperplanes_saito) {
    s.findings.push_back({"chain_top", arrangement_id(all), "delta_0..delta_{ell-1} fail Saito on A_all",
                          format_arrangement(all), ""});
  }
  for (std::size_t i : order) {
    auto& o = outputs[i];
    const auto& r = o.record;
    ++s.total_by_size[r.size];
    if (r.verdict == Verdict::Free) ++s.free_by_size[r.size];
    ++s.verdicts[std::string(verdict_name(r.verdict))];
    if (r.verdict == Verdict::Undetermined) ++s.undetermined;
    if (!r.exponent_pattern.empty()) ++s.exponent_patterns[r.exponent_pattern];
    s.arrangements_covered += r.orbit_size;
    for (const auto& kind : r.flags) {
      if (kind == "oracle") ++s.oracle_disagreements;
      else if (kind == "classification") ++s.classification_violations;
      else if (detail::is_lemma_kind(kind)) ++s.lemma_violations;
      else if (detail::is_theorem_kind(kind)) ++s.theorem_violations;
    }
    for (auto& f : o.findings) s.findings.push_back(std::move(f));
    res.records.push_back(std::move(o.record));
  }
  s.records = res.records.size();

  // Every (A, H) pair, when the whole subset lattice was visited.
  if (spec.mode == CensusMode::Exhaustive && spec.addition_deletion && spec.ell == 3 && spec.min_size == 0 &&
      !spec.max_size) {
    auto mask_of = [](const ClassificationRecord& r) {
      std::uint64_t mask = 0;
      for (auto i : r.indices) mask |= std::uint64_t{1} << i;
      return mask;
    };
    std::vector<FreeState> state(std::size_t{1} << all.size());
    std::vector<CharPoly> chis(state.size());
    for (const auto& r : res.records) {
      state[mask_of(r)] = {r.verdict == Verdict::Free, r.exponents};
      chis[mask_of(r)] = r.chi;
    }
    std::vector<std::vector<Finding>> pair_findings(res.records.size());
    std::vector<std::size_t> pair_counts(res.records.size(), 0);
    std::vector<std::size_t> ad_bad(res.records.size(), 0);
    std::vector<std::size_t> rec_bad(res.records.size(), 0);
    parallel_for(res.records.size(), spec.threads, [&](std::size_t idx) {
      const auto& r = res.records[idx];
      const std::uint64_t mask = mask_of(r);
      const Arrangement arr = detail::subset(all, mask);
      for (auto i : r.indices) {
        const std::uint64_t dmask = mask & ~(std::uint64_t{1} << i);
        const RestrictionMap rm = restriction(arr, all[i]);
        ++pair_counts[idx];
        const std::string where = " deleting " + arrangement_id(Arrangement(field, spec.ell, {all[i]}));
        if (!addition_deletion_consistent(state[mask], state[dmask], rank_two_exponents(rm.restricted.size()))) {
          ++ad_bad[idx];
          pair_findings[idx].push_back({"addition_deletion", r.id, "inconsistent" + where, format_arrangement(arr), ""});
        }
        // chi(A, t) = chi(A', t) - chi(A'', t)
        if (chis[mask] != chis[dmask] - char_poly(rm.restricted)) {
          ++rec_bad[idx];
          pair_findings[idx].push_back({"recursion", r.id, "deletion-restriction fails" + where,
                                        format_arrangement(arr), ""});
        }
      }
    });
    for (std::size_t idx = 0; idx < res.records.size(); ++idx) {
      s.addition_deletion_pairs += pair_counts[idx];
      s.addition_deletion_violations += ad_bad[idx];
      s.recursion_violations += rec_bad[idx];
      for (auto& f : pair_findings[idx]) {
        res.records[idx].flags.push_back(f.kind);
        s.findings.push_back(std::move(f));
      }
    }
  }
  for (std::size_t i = 0; i < s.findings.size(); ++i) s.findings[i].command = reproduction_command(s.findings[i], i);
  return res;
}

}  // namespace hypfree
