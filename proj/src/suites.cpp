#include "perhom/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "perhom/koszul.hpp"
#include "perhom/linalg.hpp"
#include "perhom/orbit.hpp"
#include "perhom/random.hpp"

namespace perhom {

namespace {

const Field F5 = Field::prime(5);
const Field F7 = Field::prime(7);
const Field QQ = Field::rationals();

const char* field_name(const Field& f) { return f.is_rational() ? "Q" : f.characteristic() == 5 ? "F5" : "F7"; }

// Records one case; failures become findings.
void record(SuiteReport& r, bool ok, json finding) {
  ++r.cases;
  if (ok) {
    ++r.passed;
  } else {
    r.findings.push_back(std::move(finding));
  }
}

// Runs f, turning a library error into a failed case with the error text.
void guarded(SuiteReport& r, json where, const std::function<bool(json&)>& f) {
  bool ok = false;
  try {
    ok = f(where);
  } catch (const Error& e) {
    where["error"] = e.what();
  }
  record(r, ok, std::move(where));
}

// Per-n tallies shown in details.
struct Tally {
  std::map<std::string, std::pair<std::size_t, std::size_t>> rows;
  void add(const std::string& key, bool ok) {
    auto& [cases, passed] = rows[key];
    ++cases;
    passed += ok ? 1 : 0;
  }
};

void embedding(SuiteReport& r, Rng& rng) {
  std::vector<BoundedComplex> corpus;
  for (int k = 0; k < 5; ++k) corpus.push_back(random_complex(rng, F5, 4, 4));
  json details = json::array();
  for (int n = 1; n <= 3; ++n) {
    auto cert = embedding_certificate(corpus, n);
    std::size_t hom_total = 0;
    for (const auto& p : cert.pairs) {
      hom_total += p.report.total;
      record(r, p.report.equal(),
             {{"n", n}, {"source", p.source}, {"target", p.target}, {"orbit_sum", p.report.total},
              {"periodic", p.report.periodic_side}});
    }
    details.push_back({{"n", n}, {"pairs", cert.pairs.size()}, {"equal", cert.equal_pairs()}, {"hom_dim_sum", hom_total}});
  }
  r.details = details;
}

void periodization(SuiteReport& r, Rng& rng) {
  Tally tally;
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 3;
    const Field& f = k % 2 ? QQ : F5;
    const bool rebased = (k / 2) % 2 == 1;
    auto base = random_periodic_complex(rng, f, n, 3);
    auto p = periodic_cone(PeriodicChainMap::identity(base));
    if (rebased) {
      std::vector<Matrix> bases;
      for (int t = 0; t < n; ++t) bases.push_back(random_invertible(rng, f, p.dim(t)));
      p = change_basis(p, bases);
    }
    const std::size_t before = r.passed;
    guarded(r, {{"case", k}, {"n", n}, {"field", field_name(f)}, {"dims", p.dims()}}, [&](json& where) {
      auto s = unrolled_contraction(p);
      if (!s) {
        where["error"] = "no contraction of the unrolled window";
        return false;
      }
      auto sigma = periodize_null_homotopy(p, *s);
      bool ok = sigma.from() == PeriodicChainMap::identity(p) && sigma.to() == PeriodicChainMap::zero(p, p) &&
                !check_homotopy(sigma).has_value();
      if (!ok) where["error"] = "periodized homotopy does not contract";
      return ok;
    });
    tally.add(std::to_string(n), r.passed > before);
  }
  r.details = json::array();
  for (auto& [n, t] : tally.rows) r.details.push_back({{"n", std::stoi(n)}, {"cases", t.first}, {"passed", t.second}});
}

// Shared driver for suites of the form "25 seeded cases per n in {1, 2, 3}".
void per_period(SuiteReport& r, Rng& rng, const std::vector<Field>& fields,
                const std::function<bool(Rng&, const Field&, int, json&)>& one) {
  r.details = json::array();
  for (const Field& f : fields) {
    for (int n = 1; n <= 3; ++n) {
      std::size_t before = r.passed;
      for (int k = 0; k < 25; ++k) {
        guarded(r, {{"case", k}, {"n", n}, {"field", field_name(f)}}, [&](json& where) { return one(rng, f, n, where); });
      }
      r.details.push_back({{"field", field_name(f)}, {"n", n}, {"cases", 25}, {"passed", r.passed - before}});
    }
  }
}

void cone_compression(SuiteReport& r, Rng& rng) {
  per_period(r, rng, {F5, QQ}, [](Rng& g, const Field& f, int n, json&) {
    auto x = random_complex(g, f, 3, 4);
    auto y = random_complex(g, f, 3, 4);
    auto h = random_chain_map(g, x, y);
    auto lhs = reorder(compress(cone(h).complex, n), cone_compression_reordering(h, n));
    return lhs == periodic_cone(compress_map(h, n));
  });
}

void unit_splitting(SuiteReport& r, Rng& rng) {
  per_period(r, rng, {F5, QQ}, [](Rng& g, const Field& f, int n, json&) {
    auto x = random_complex(g, f, 3, 4);
    auto u = unit_and_retraction(x, n, x.lo() - n, x.hi() + n);
    return compose(u.retraction, u.unit) == ChainMap::identity(x);
  });
}

void twist(SuiteReport& r, Rng& rng) {
  per_period(r, rng, {F5, QQ}, [](Rng& g, const Field& f, int n, json&) {
    auto x = random_complex(g, f, 3, 4);
    auto t = twist_iso(x, n);
    if (validate(t)) return false;
    for (int i = t.lo(); i <= t.hi(); ++i) {
      const Matrix c = t.component(i);
      if (c.rows() != c.cols() || rank(c) != c.rows()) return false;
    }
    return true;
  });
}

void tensor_square(SuiteReport& r, Rng& rng) {
  per_period(r, rng, {F5, QQ}, [](Rng& g, const Field& f, int n, json&) {
    auto x = random_complex(g, f, 3, 4);
    auto y = random_complex(g, f, 3, 4);
    auto lhs = reorder(compress(tensor_complex(x, y), n), tensor_compression_reordering(x, y, n));
    return lhs == tensor_periodic(x, compress(y, n));
  });
}

void bgg_wellformed(SuiteReport& r, Rng& rng) {
  Tally tally;
  for (int k = 0; k < 50; ++k) {
    const int c = 1 + k % 3;
    const Field& f = k % 4 < 2 ? F5 : QQ;
    const int hi = rng.uniform(0, 4);
    const bool module = k % 2 == 0;
    const std::size_t before = r.passed;
    guarded(r, {{"case", k}, {"c", c}, {"field", field_name(f)}, {"window", {0, hi}}, {"input", module ? "module" : "complex"}},
            [&](json& where) {
              std::optional<Violation> v;
              if (module) {
                v = check_bgg(bgg_module(random_graded_module(rng, f, c, 0, hi)));
              } else {
                v = check_bgg(bgg_complex(random_graded_complex(rng, f, c, 0, hi, 3)));
              }
              if (v) where["error"] = v->message;
              return !v.has_value();
            });
    tally.add(std::to_string(c), r.passed > before);
  }
  r.details = json::array();
  for (auto& [c, t] : tally.rows) r.details.push_back({{"c", std::stoi(c)}, {"cases", t.first}, {"passed", t.second}});
}

void bgg_square(SuiteReport& r, Rng& rng) {
  std::size_t on_the_nose = 0, up_to_signs = 0;
  for (int k = 0; k < 50; ++k) {
    const int c = 1 + k % 2;
    const int n = 1 + (k / 2) % 3;
    const int hi = rng.uniform(1, 3);
    guarded(r, {{"case", k}, {"c", c}, {"n", n}, {"window", {0, hi}}}, [&](json& where) {
      auto report = verify_bgg_square(random_graded_complex(rng, F5, c, 0, hi, 3), n);
      on_the_nose += report.equal ? 1 : 0;
      up_to_signs += !report.equal && report.signs ? 1 : 0;
      where["mismatched_entries"] = report.mismatched_entries;
      return report.holds();
    });
  }
  r.details = json::array({{{"equal", on_the_nose}, {"equal_up_to_signs", up_to_signs}, {"cases", 50}}});
}

void bgg_cohomology(SuiteReport& r, Rng&) {
  auto phi = bgg_module(monomial_module(QQ, 1, {}, 0, 0, 6));
  auto h = cohomology_dims(phi.complex);
  r.details = json::array();
  for (auto [degree, dim] : h) {
    r.details.push_back({{"degree", degree}, {"dim", dim}});
    if (degree > 5) continue;
    const std::size_t expect = degree == 0 ? 1 : 0;
    record(r, dim == expect, {{"degree", degree}, {"dim", dim}, {"expected", expect}});
  }
}

void flag_subquotients(SuiteReport& r, Rng& rng) {
  std::size_t stages = 0;
  for (int k = 0; k < 25; ++k) {
    const int parts = rng.uniform(2, 4);
    auto flag = random_flag(rng, F7, parts, 3);
    guarded(r, {{"case", k}, {"parts", flag.parts}}, [&](json& where) {
      auto filtration = flag_filtration(flag);
      stages += filtration.size();
      for (std::size_t i = 0; i < filtration.size(); ++i) {
        if (!filtration[i].subquotient.diff(0).is_zero()) {
          where["stage"] = i;
          return false;
        }
      }
      return true;
    });
  }
  r.details = json::array({{{"flags", 25}, {"stages", stages}}});
}

void determinism(SuiteReport& r, std::uint64_t seed) {
  r.details = json::array();
  for (const auto& name : suite_names()) {
    if (name == "determinism") continue;
    const std::string a = canonical(to_json(run_suite(name, seed)));
    const std::string b = canonical(to_json(run_suite(name, seed)));
    record(r, a == b, {{"suite", name}});
    r.details.push_back({{"suite", name}, {"identical", a == b}, {"bytes", a.size()}});
  }
}

using SuiteFn = void (*)(SuiteReport&, Rng&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"embedding", embedding},
      {"periodization", periodization},
      {"cone-compression", cone_compression},
      {"unit-splitting", unit_splitting},
      {"twist-iso", twist},
      {"tensor-square", tensor_square},
      {"bgg-wellformed", bgg_wellformed},
      {"bgg-square", bgg_square},
      {"bgg-cohomology", bgg_cohomology},
      {"flag-subquotients", flag_subquotients},
      {"determinism", nullptr},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  const auto& suites = registry();
  auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& s) { return s.first == name; });
  if (it == suites.end()) throw InvalidInput("unknown suite \"" + name + "\"");
  SuiteReport r;
  r.suite = name;
  r.criterion = static_cast<int>(it - suites.begin()) + 1;
  r.seed = seed;
  if (it->second == nullptr) {
    determinism(r, seed);
  } else {
    Rng rng(seed);
    it->second(r, rng);
  }
  return r;
}

json to_json(const SuiteReport& r) {
  return {{"suite", r.suite},     {"criterion", r.criterion}, {"seed", r.seed},         {"cases", r.cases},
          {"passed", r.passed},   {"holds", r.holds()},       {"details", r.details}, {"findings", r.findings}};
}

namespace {

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_rows(std::ostringstream& out, const json& rows) {
  std::vector<std::string> keys;
  for (const auto& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < keys.size(); ++c) {
      width[c] = std::max(width[c], row.contains(keys[c]) ? cell(row[keys[c]]).size() : 1);
    }
  }
  auto line = [&](const std::function<std::string(std::size_t)>& text) {
    std::string s;
    for (std::size_t c = 0; c < keys.size(); ++c) {
      std::string t = text(c);
      s += t + std::string(width[c] - t.size() + (c + 1 < keys.size() ? 2 : 0), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << "  " << s << "\n";
  };
  line([&](std::size_t c) { return keys[c]; });
  for (const auto& row : rows) {
    line([&](std::size_t c) { return row.contains(keys[c]) ? cell(row[keys[c]]) : std::string("-"); });
  }
}

}  // namespace

std::string aligned_table(const json& rows) {
  std::ostringstream out;
  render_rows(out, rows);
  return out.str();
}

std::string to_table(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite      " << r.suite << "\n"
      << "criterion  " << r.criterion << "\n"
      << "seed       " << r.seed << "\n"
      << "passed     " << r.passed << "/" << r.cases << "\n"
      << "holds      " << (r.holds() ? "yes" : "no") << "\n";
  if (r.details.is_array() && !r.details.empty()) {
    out << "details\n" << aligned_table(r.details);
  }
  if (!r.findings.empty()) {
    out << "findings\n" << aligned_table(r.findings);
  }
  return out.str();
}

}  // namespace perhom
