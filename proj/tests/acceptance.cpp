// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance [--threads N]

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "hypfree/hypfree.hpp"

using namespace hypfree;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few failures and a running summary.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { summary_ += (summary_.empty() ? "" : ", ") + s; }
  Outcome outcome() const {
    if (failures_ == 0) return {true, summary_};
    return {false, std::to_string(failures_) + " failure(s): " + notes_};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
  std::string summary_;
};

struct Census {
  std::int64_t q;
  Arrangement all;
  CensusResult result;
};

Census run_exhaustive(std::uint64_t p, unsigned threads) {
  CensusSpec spec;
  spec.p = p;
  spec.threads = threads;
  return {static_cast<std::int64_t>(p), all_hyperplanes(make_field(p, 1), 3), run_census(spec)};
}

Arrangement member(const Census& c, const ClassificationRecord& r) {
  std::vector<Hyperplane> hs;
  for (auto i : r.indices) hs.push_back(c.all[i]);
  return Arrangement(c.all.field_ptr(), 3, hs);
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Outcome oracle_equivalence(const std::vector<Census>& cs) {
  Check ck;
  for (const auto& c : cs) {
    ck.expect(c.result.records.size() == (std::size_t{1} << c.all.size()), "census size q=" + std::to_string(c.q));
    for (const auto& r : c.result.records) {
      // Both counts are recomputed here, not read back from the census.
      const auto a = member(c, r);
      const auto chi = char_poly(a);
      for (unsigned k = 1; k <= 2; ++k) {
        const std::int64_t v = chi.eval(detail::ipow(c.q, k));
        const bool ok = v >= 0 && count_complement_extension(a, k) == static_cast<std::uint64_t>(v) &&
                        crapo_rota_count(a, k) == static_cast<std::uint64_t>(v);
        ck.expect(ok, r.id + " k=" + std::to_string(k));
      }
    }
    ck.note(std::to_string(c.result.records.size()) + " arrangements at q=" + std::to_string(c.q));
  }
  return ck.outcome();
}

Outcome all_hyperplane_exponents() {
  Check ck;
  for (std::uint32_t p : {2u, 3u}) {
    const auto f = make_field(p, 1);
    const auto all = all_hyperplanes(f, 3);
    const std::size_t q = p;
    const std::vector<std::size_t> want{1, q, q * q};
    const auto s = saito_check(all, {frobenius_field(f, 3, 0), frobenius_field(f, 3, 1), frobenius_field(f, 3, 2)});
    ck.expect(s && s->exponents == want, "Saito on A_all q=" + std::to_string(q));
    std::vector<std::size_t> degs;
    for (const auto& g : minimal_generators(all, q * q + 1)) degs.push_back(g.degree);
    ck.expect(degs == want, "generator degrees q=" + std::to_string(q));
  }
  ck.note("exponents (1,2,4) and (1,3,9)");
  return ck.outcome();
}

Outcome classification(const std::vector<Census>& cs) {
  Check ck;
  std::size_t compared = 0, undetermined = 0;
  for (const auto& c : cs) {
    for (const auto& r : c.result.records) {
      if (r.verdict == Verdict::Undetermined) ++undetermined;
      if (static_cast<std::int64_t>(r.size) < 2 * c.q - 2) continue;
      const auto pred = predict_freeness(r.size, c.q, 3, r.chi);
      ck.expect(pred.verdict == r.verdict, r.id);
      ++compared;
    }
  }
  ck.expect(undetermined == 0, std::to_string(undetermined) + " undetermined verdicts");
  ck.note(std::to_string(compared) + " compared, 0 undetermined");
  return ck.outcome();
}

Outcome vanishing_at_q(const std::vector<Census>& cs) {
  Check ck;
  std::size_t chains = 0, large_free = 0;
  for (const auto& c : cs) {
    for (const auto& r : c.result.records) {
      if (r.chi_q == 0) {
        const auto want = sorted({1, static_cast<std::size_t>(c.q), r.size - static_cast<std::size_t>(c.q) - 1});
        ck.expect(r.verdict == Verdict::Free && r.exponents == want, r.id + " exponents");
        ck.expect(check_chain(supersolvable_resolution(member(c, r)), false), r.id + " chain");
        ++chains;
      }
      if (r.verdict == Verdict::Free && static_cast<std::int64_t>(r.size) >= 2 * c.q) {
        ck.expect(r.chi_q == 0, r.id + " free with chi(q) != 0");
        ++large_free;
      }
    }
    ck.expect(all_hyperplanes_saito(c.all.field_ptr(), 3), "A_all top of chain");
  }
  ck.note(std::to_string(chains) + " chains, " + std::to_string(large_free) + " free with |A| >= 2q");
  return ck.outcome();
}

Outcome small_clauses(const Census& c3) {
  Check ck;
  const std::int64_t q = c3.q;
  const CharPoly at5 = CharPoly::from_roots({1, q - 1, q - 1});
  const CharPoly at4 = CharPoly::from_roots({1, q - 1, q - 2});
  std::size_t n5 = 0, n4 = 0;
  for (const auto& r : c3.result.records) {
    if (r.chi_q == 0) continue;
    if (static_cast<std::int64_t>(r.size) == 2 * q - 1) {
      const bool free = r.verdict == Verdict::Free;
      ck.expect(free == (r.chi == at5), r.id + " at 2q-1");
      if (!free) continue;
      ++n5;
      const auto lc = line_completion(member(c3, r));
      ck.expect(lc && lc->valid && lc->complement_size == static_cast<std::size_t>(q - 1), r.id + " line");
    } else if (static_cast<std::int64_t>(r.size) == 2 * q - 2) {
      const bool free = r.verdict == Verdict::Free;
      ck.expect(free == (r.chi == at4), r.id + " at 2q-2");
      n4 += free;
    }
  }
  ck.expect(n5 > 0 && n4 > 0, "no instances");
  ck.note(std::to_string(n5) + " line completions at |A|=5, " + std::to_string(n4) + " free at |A|=4");
  return ck.outcome();
}

Outcome ziegler() {
  Check ck;
  const auto a = ziegler_example(make_field(3, 1));
  const auto chi = char_poly(a);
  const auto count = count_complement(a);
  const auto rep = decide_freeness(a);
  ck.expect(a.size() == 9, "size");
  ck.expect(chi == CharPoly::from_roots({1, 4, 4}), "chi");
  ck.expect(count == 2 && chi.eval(3) == 2, "complement");
  ck.expect(rep.verdict == Verdict::NotFree, "verdict");
  ck.note("chi = " + factored_form({1, 4, 4}) + ", |M| = 2, " + std::string(certificate_name(rep.certificate)));
  return ck.outcome();
}

Outcome decreasing_zeros(const std::vector<Census>& cs) {
  Check ck;
  std::size_t n = 0;
  for (const auto& c : cs) {
    const unsigned k_max = c.q == 2 ? 3 : 2;
    for (const auto& r : c.result.records) {
      const auto a = member(c, r);
      ck.expect(verify_lemma_decreasing_zeros(r.chi, c.q, k_max), r.id + " zeros");
      ck.expect(a.empty() || chi_vanishes_at_one(a, r.chi), r.id + " chi(1)");
      ck.expect(all_characterization(a, r.chi).agree(), r.id + " A_all predicates");
      ++n;
    }
  }
  ck.note(std::to_string(n) + " arrangements");
  return ck.outcome();
}

Outcome second_exponent(const std::vector<Census>& cs) {
  Check ck;
  std::size_t free = 0, essential = 0;
  for (const auto& c : cs) {
    for (const auto& r : c.result.records) {
      if (r.rank != 3) continue;
      ++essential;
      if (r.verdict == Verdict::Free) {
        ++free;
        ck.expect(r.exponents.size() == 3 && r.exponents[0] == 1 && r.exponents[1] <= static_cast<std::size_t>(c.q),
                  r.id + " d2");
      }
      ck.expect(minimal_nontrivial_degree(member(c, r)) <= static_cast<std::size_t>(c.q), r.id + " minimal degree");
    }
  }
  ck.note(std::to_string(essential) + " essential, " + std::to_string(free) + " free");
  return ck.outcome();
}

Outcome higher_dimension() {
  Check ck;
  const auto f2 = make_field(2, 1);
  const auto all = all_hyperplanes(f2, 4);
  const auto top = verify_higher_dim(all);
  ck.expect(top.ok() && top.saito_attempted, "A_all(F_2^4) " + top.note);
  std::size_t saito = 0;
  for (const auto& h : all.hyperplanes()) {
    const auto r = verify_higher_dim(deletion(all, h));
    ck.expect(r.ok() && r.exponents == std::vector<std::int64_t>{1, 2, 4, 7}, "deletion " + r.note);
    saito += r.saito_attempted && r.saito_ok;
  }
  ck.note("16 arrangements, " + std::to_string(saito + (top.saito_ok ? 1 : 0)) + " with a Saito basis");
  return ck.outcome();
}

bool field_axioms(const FieldCtx& f) {
  const Elem q = f.cardinality();
  for (Elem a = 0; a < q; ++a) {
    if (f.add(a, f.neg(a)) != 0 || f.mul(a, 1) != a) return false;
    if (a && f.mul(a, f.inv(a)) != 1) return false;
    for (Elem b = 0; b < q; ++b) {
      if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) return false;
      for (Elem c = 0; c < q; ++c) {
        if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return false;
        if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return false;
        if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
      }
    }
  }
  return true;
}

Outcome properties(const std::vector<Census>& cs, unsigned threads) {
  Check ck;
  std::size_t fields = 0;
  for (std::uint64_t q = 2; q <= 256; ++q) {
    std::uint64_t p = 0;
    unsigned e = 0;
    try {
      std::tie(p, e) = split_prime_power(q);
    } catch (const Error&) {
      continue;
    }
    ck.expect(field_axioms(*make_field(p, e)), "field axioms q=" + std::to_string(q));
    ++fields;
  }

  const Census& c2 = cs.front();
  std::size_t pairs = 0;
  for (const auto& r : c2.result.records) {
    const auto a = member(c2, r);
    for (const auto& h : a.hyperplanes()) {
      ck.expect(char_poly_recursion_check(a, h), r.id + " recursion");
      ++pairs;
    }
  }

  for (const auto& c : cs) {
    const auto f = c.all.field_ptr();
    const auto e0 = euler_field(f, 3), e1 = frobenius_field(f, 3, 1), e2 = frobenius_field(f, 3, 2);
    for (const auto& r : c.result.records) {
      const auto a = member(c, r);
      ck.expect(e0.is_logarithmic(a) && e1.is_logarithmic(a) && e2.is_logarithmic(a), r.id + " delta_k");
    }
  }

  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const Census& c = cs[trial % 2];
    const auto& r = c.result.records[rng() % c.result.records.size()];
    const auto a = member(c, r);
    std::vector<std::vector<MultiPoly>> m;
    for (int i = 0; i < 3; ++i) {
      const std::size_t d = 1 + rng() % 3;
      const auto piece = graded_piece(a, d);
      std::vector<MultiPoly> comps(3, MultiPoly(a.field_ptr(), 3));
      for (const auto& b : piece.basis) {
        const Elem coef = static_cast<Elem>(rng() % c.q);
        for (std::size_t k = 0; k < 3; ++k) comps[k] = comps[k] + b[k].scaled(coef);
      }
      m.push_back(std::move(comps));
    }
    const MultiPoly det = poly_determinant(m);
    bool divisible = true;
    for (const auto& h : a.hyperplanes()) divisible = divisible && reduce_mod_linear(det, h.covector()).is_zero();
    ck.expect(divisible, r.id + " det not divisible by Q");
  }

  CensusSpec spec;
  spec.p = 2;
  spec.e = 2;
  spec.mode = CensusMode::Sample;
  spec.n = 100;
  spec.seed = 7;
  const auto one = run_census(spec);
  spec.threads = threads;
  const auto many = run_census(spec);
  ck.expect(census_tsv(one) == census_tsv(many) && to_json(one.summary).dump() == to_json(many.summary).dump(),
            "census output differs between 1 and " + std::to_string(threads) + " threads");

  ck.note(std::to_string(fields) + " fields, " + std::to_string(pairs) + " recursion pairs, 100 determinants, threads 1 vs " +
          std::to_string(threads));
  return ck.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  unsigned threads = 4;
  app.add_option("--threads", threads, "worker threads for the census runs")->check(CLI::Range(1u, 256u));
  CLI11_PARSE(app, argc, argv);

  std::vector<Census> censuses;
  bool census_ok = true;
  std::string census_error;
  try {
    censuses.push_back(run_exhaustive(2, threads));
    censuses.push_back(run_exhaustive(3, threads));
  } catch (const std::exception& e) {
    census_ok = false;
    census_error = e.what();
  }

  struct Criterion {
    int number;
    std::string name;
    bool needs_census;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "counting oracles agree with chi(A, q^k)", true, [&] { return oracle_equivalence(censuses); }},
      {2, "A_all exponents from Saito and generators", false, all_hyperplane_exponents},
      {3, "classification by |A| and chi matches the decision", true, [&] { return classification(censuses); }},
      {4, "chi(q) = 0 gives a free chain; large free has chi(q) = 0", true, [&] { return vanishing_at_q(censuses); }},
      {5, "|A| = 2q-1 and 2q-2 clauses, line completion", true, [&] { return small_clauses(censuses[1]); }},
      {6, "Ziegler fixture", false, ziegler},
      {7, "decreasing zeros and the A_all characterization", true, [&] { return decreasing_zeros(censuses); }},
      {8, "second exponent and minimal degree at most q", true, [&] { return second_exponent(censuses); }},
      {9, "ell = 4 over F_2: factorization and chains", false, higher_dimension},
      {10, "property suites", true, [&] { return properties(censuses, threads); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    if (c.needs_census && !census_ok) {
      out = {false, "census failed: " + census_error};
    } else {
      try {
        out = c.run();
      } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (out.ok ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << " (" << out.detail << ") "
              << timing << std::endl;
    failed += !out.ok;
  }
  std::cout << (failed ? "FAILED " + std::to_string(failed) + " of 10" : std::string("all 10 criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
