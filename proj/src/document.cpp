#include "perhom/document.hpp"

#include <algorithm>
#include <initializer_list>
#include <regex>

namespace perhom {

namespace {

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') {
      escaped += "~0";
    } else if (ch == '/') {
      escaped += "~1";
    } else {
      escaped += ch;
    }
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

const json& member(const json& obj, const std::string& ptr, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(ptr, std::string("missing field \"") + key + "\"");
  return *it;
}

void only_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ParseError(ptr, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; })) {
      throw ParseError(child(ptr, it.key()), "unknown field");
    }
  }
}

const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw ParseError(ptr, "expected an array");
  return j;
}

const json& array(const json& j, const std::string& ptr, std::size_t length) {
  array(j, ptr);
  if (j.size() != length) {
    throw ParseError(ptr, "expected " + std::to_string(length) + " entries, got " + std::to_string(j.size()));
  }
  return j;
}

long integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ParseError(ptr, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(1) << 40) {
    throw ParseError(ptr, "integer out of range");
  }
  long v = j.get<long>();
  if (v < -(1L << 40) || v > (1L << 40)) throw ParseError(ptr, "integer out of range");
  return v;
}

int small_int(const json& j, const std::string& ptr) {
  long v = integer(j, ptr);
  if (v < -100000 || v > 100000) throw ParseError(ptr, "value out of range");
  return static_cast<int>(v);
}

std::size_t count(const json& j, const std::string& ptr) {
  long v = integer(j, ptr);
  if (v < 0 || v > 100000) throw ParseError(ptr, "expected a non-negative count");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> counts(const json& j, const std::string& ptr) {
  std::vector<std::size_t> out;
  array(j, ptr);
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(count(j[k], child(ptr, k)));
  return out;
}

Field parse_field(const json& j, const std::string& ptr) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return Field::rationals();
    throw ParseError(ptr, "field must be \"Q\" or {\"fp\": p}");
  }
  if (!j.is_object()) throw ParseError(ptr, "field must be \"Q\" or {\"fp\": p}");
  only_keys(j, ptr, {"fp"});
  const std::string pp = child(ptr, "fp");
  long p = integer(member(j, ptr, "fp"), pp);
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw ParseError(pp, "p not prime");
  if (p >= (1L << 31)) throw ParseError(pp, "p must be below 2^31");
  return Field::prime(static_cast<std::uint64_t>(p));
}

const std::regex& rational_syntax() {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  return re;
}

mpq_class parse_entry(const Field& field, const json& j, const std::string& ptr) {
  if (field.is_rational()) {
    if (j.is_number_integer()) return mpq_class(integer(j, ptr));
    if (!j.is_string()) throw ParseError(ptr, "rational entries are strings \"a/b\" or \"a\"");
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, rational_syntax())) throw ParseError(ptr, "malformed rational \"" + s + "\"");
    auto slash = s.find('/');
    mpz_class num(s.substr(0, slash));
    mpz_class den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
    if (den == 0) throw ParseError(ptr, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  const long p = field.characteristic();
  long v;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.size() > 10 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw ParseError(ptr, "F_p entries are integers in [0, p)");
    }
    v = std::stol(s);
  } else {
    v = integer(j, ptr);
  }
  if (v < 0 || v >= p) throw ParseError(ptr, "F_p entries are integers in [0, p)");
  return mpq_class(v);
}

Matrix parse_matrix(const Field& field, const json& j, const std::string& ptr, std::size_t rows, std::size_t cols) {
  array(j, ptr, rows);
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = child(ptr, r);
    array(j[r], rp, cols);
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, parse_entry(field, j[r][c], child(rp, c)));
  }
  return m;
}

// Runs a constructor or validator and pins any library error to ptr.
template <typename F>
auto at_pointer(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(ptr, e.what());
  }
}

void check(const std::optional<Violation>& v, const std::string& ptr, const char* what) {
  if (v) throw ParseError(ptr, std::string(what) + " fails at degree " + std::to_string(v->degree) + ": " + v->message);
}

BoundedComplex parse_complex_body(const Field& field, const json& j, const std::string& ptr) {
  const std::int32_t lo = small_int(member(j, ptr, "lo"), child(ptr, "lo"));
  auto dims = counts(member(j, ptr, "dims"), child(ptr, "dims"));
  const std::string dp = child(ptr, "diffs");
  const json& dj = array(member(j, ptr, "diffs"), dp, dims.empty() ? 0 : dims.size() - 1);
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) diffs.push_back(parse_matrix(field, dj[k], child(dp, k), dims[k + 1], dims[k]));
  auto c = at_pointer(ptr, [&] { return BoundedComplex(field, lo, dims, diffs); });
  check(validate(c), ptr, "d∘d = 0");
  return c;
}

json complex_body(const BoundedComplex& c) {
  json diffs = json::array();
  for (const auto& d : c.diffs()) diffs.push_back(matrix_to_json(d));
  return {{"lo", c.lo()}, {"dims", c.dims()}, {"diffs", diffs}};
}

Algebra parse_algebra(const json& j, const std::string& ptr) {
  if (!j.is_object() || j.size() != 1) throw ParseError(ptr, "algebra must be {\"poly\": c} or {\"ext\": c}");
  only_keys(j, ptr, {"poly", "ext"});
  const bool poly = j.contains("poly");
  const std::string key = poly ? "poly" : "ext";
  long c = integer(j.at(key), child(ptr, key));
  if (c < 1 || c > 6) throw ParseError(child(ptr, key), "number of generators must lie in [1, 6]");
  return poly ? Algebra::poly(static_cast<int>(c)) : Algebra::ext(static_cast<int>(c));
}

json algebra_to_json(const Algebra& a) {
  return {{a.kind == AlgebraKind::Polynomial ? "poly" : "ext", a.generators}};
}

std::pair<int, int> parse_window(const json& j, const std::string& ptr) {
  array(j, ptr, 2);
  int lo = small_int(j[0], child(ptr, 0));
  int hi = small_int(j[1], child(ptr, 1));
  if (hi < lo - 1) throw ParseError(ptr, "window [lo, hi] needs hi >= lo - 1");
  return {lo, hi};
}

// dims and actions of a module whose field, algebra and window are already known.
GradedModule parse_module_body(const Field& field, const Algebra& algebra, int lo, int hi, const json& j,
                               const std::string& ptr) {
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  const std::string dp = child(ptr, "dims");
  auto dims = counts(array(member(j, ptr, "dims"), dp, len), dp);
  auto dim = [&](int i) { return i >= lo && i <= hi ? dims[static_cast<std::size_t>(i - lo)] : std::size_t{0}; };
  const std::string ap = child(ptr, "actions");
  const json& aj = array(member(j, ptr, "actions"), ap, static_cast<std::size_t>(algebra.generators));
  std::vector<std::vector<Matrix>> actions;
  for (std::size_t g = 0; g < aj.size(); ++g) {
    const std::string gp = child(ap, g);
    array(aj[g], gp, len);
    std::vector<Matrix> per_degree;
    for (std::size_t k = 0; k < len; ++k) {
      int i = lo + static_cast<int>(k);
      per_degree.push_back(parse_matrix(field, aj[g][k], child(gp, k), dim(i + algebra.generator_degree()), dims[k]));
    }
    actions.push_back(std::move(per_degree));
  }
  auto m = at_pointer(ptr, [&] { return GradedModule(field, algebra, lo, dims, actions); });
  if (auto v = validate_module(m)) {
    throw ParseError(ptr, "module relation fails for generators " + std::to_string(v->first + 1) + ", " +
                              std::to_string(v->second + 1) + " at degree " + std::to_string(v->degree));
  }
  return m;
}

json module_body(const GradedModule& m) {
  json actions = json::array();
  for (const auto& per_degree : m.actions()) {
    json row = json::array();
    for (const auto& a : per_degree) row.push_back(matrix_to_json(a));
    actions.push_back(row);
  }
  return {{"dims", m.dims()}, {"actions", actions}};
}

Document parse_kind(const std::string& kind, const json& j, const Field& field) {
  const std::string root;
  if (kind == "complex") {
    only_keys(j, root, {"kind", "field", "lo", "dims", "diffs"});
    return parse_complex_body(field, j, root);
  }
  if (kind == "periodic") {
    only_keys(j, root, {"kind", "field", "n", "dims", "diffs"});
    const std::size_t n = count(member(j, root, "n"), "/n");
    if (n < 1) throw ParseError("/n", "period must be >= 1");
    auto dims = counts(array(member(j, root, "dims"), "/dims", n), "/dims");
    const json& dj = array(member(j, root, "diffs"), "/diffs", n);
    std::vector<Matrix> diffs;
    for (std::size_t k = 0; k < n; ++k) diffs.push_back(parse_matrix(field, dj[k], child("/diffs", k), dims[(k + 1) % n], dims[k]));
    auto p = at_pointer(root, [&] { return PeriodicComplex(field, dims, diffs); });
    check(validate(p), root, "d∘d = 0");
    return p;
  }
  if (kind == "graded-module") {
    only_keys(j, root, {"kind", "field", "algebra", "window", "dims", "actions"});
    Algebra a = parse_algebra(member(j, root, "algebra"), "/algebra");
    auto [lo, hi] = parse_window(member(j, root, "window"), "/window");
    return parse_module_body(field, a, lo, hi, j, root);
  }
  if (kind == "chain-map") {
    only_keys(j, root, {"kind", "field", "source", "target", "lo", "components"});
    for (const char* side : {"source", "target"}) only_keys(member(j, root, side), child(root, side), {"lo", "dims", "diffs"});
    BoundedComplex x = parse_complex_body(field, j.at("source"), "/source");
    BoundedComplex y = parse_complex_body(field, j.at("target"), "/target");
    const int lo = small_int(member(j, root, "lo"), "/lo");
    const json& cj = array(member(j, root, "components"), "/components");
    std::vector<Matrix> comps;
    for (std::size_t k = 0; k < cj.size(); ++k) {
      int i = lo + static_cast<int>(k);
      comps.push_back(parse_matrix(field, cj[k], child("/components", k), y.dim(i), x.dim(i)));
    }
    auto f = at_pointer(root, [&] { return ChainMap(x, y, lo, comps); });
    check(validate(f), root, "chain map condition");
    return f;
  }
  if (kind == "flag") {
    only_keys(j, root, {"kind", "field", "parts", "blocks"});
    auto parts = counts(member(j, root, "parts"), "/parts");
    if (parts.empty()) throw ParseError("/parts", "a flag needs at least one part");
    const json& bj = array(member(j, root, "blocks"), "/blocks", parts.size());
    FlagData flag{field, parts, {}};
    for (std::size_t s = 0; s < parts.size(); ++s) {
      const std::string sp = child("/blocks", s);
      array(bj[s], sp, s);
      std::vector<Matrix> row;
      for (std::size_t t = 0; t < s; ++t) row.push_back(parse_matrix(field, bj[s][t], child(sp, t), parts[t], parts[s]));
      flag.blocks.push_back(std::move(row));
    }
    at_pointer(root, [&] { return flag_assemble(flag); });
    return flag;
  }
  if (kind == "graded-complex") {
    only_keys(j, root, {"kind", "field", "algebra", "window", "lo", "terms", "diffs"});
    Algebra a = parse_algebra(member(j, root, "algebra"), "/algebra");
    auto [ilo, ihi] = parse_window(member(j, root, "window"), "/window");
    const int lo = small_int(member(j, root, "lo"), "/lo");
    const json& tj = array(member(j, root, "terms"), "/terms");
    if (tj.empty()) {
      array(member(j, root, "diffs"), "/diffs", 0);
      return GradedComplex(field, a, ilo, ihi);
    }
    std::vector<GradedModule> terms;
    for (std::size_t k = 0; k < tj.size(); ++k) {
      const std::string tp = child("/terms", k);
      only_keys(tj[k], tp, {"dims", "actions"});
      terms.push_back(parse_module_body(field, a, ilo, ihi, tj[k], tp));
    }
    const json& dj = array(member(j, root, "diffs"), "/diffs", terms.size() - 1);
    const std::size_t len = static_cast<std::size_t>(ihi - ilo + 1);
    std::vector<std::vector<Matrix>> diffs;
    for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
      const std::string kp = child("/diffs", k);
      array(dj[k], kp, len);
      std::vector<Matrix> per_degree;
      for (std::size_t t = 0; t < len; ++t) {
        int i = ilo + static_cast<int>(t);
        per_degree.push_back(parse_matrix(field, dj[k][t], child(kp, t), terms[k + 1].dim(i), terms[k].dim(i)));
      }
      diffs.push_back(std::move(per_degree));
    }
    auto c = at_pointer(root, [&] { return GradedComplex(lo, terms, diffs); });
    check(validate(c), root, "graded complex");
    return c;
  }
  throw ParseError("/kind", "unknown document kind \"" + kind + "\"");
}

}  // namespace

std::string document_kind(const Document& d) {
  static const char* const names[] = {"complex", "periodic", "graded-module", "chain-map", "flag", "graded-complex"};
  return names[d.index()];
}

json field_to_json(const Field& f) {
  if (f.is_rational()) return "Q";
  return {{"fp", f.characteristic()}};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.field().is_rational()) {
        row.push_back(m.at(r, c).get_str());
      } else {
        row.push_back(m.residue(r, c));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

Document from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "document must be a JSON object");
  const json& kind = member(j, "", "kind");
  if (!kind.is_string()) throw ParseError("/kind", "expected a string");
  Field field = parse_field(member(j, "", "field"), "/field");
  return parse_kind(kind.get<std::string>(), j, field);
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

json to_json(const Document& d) {
  json out = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoundedComplex>) {
          json j = complex_body(v);
          j["field"] = field_to_json(v.field());
          return j;
        } else if constexpr (std::is_same_v<T, PeriodicComplex>) {
          json diffs = json::array();
          for (const auto& m : v.diffs()) diffs.push_back(matrix_to_json(m));
          return {{"field", field_to_json(v.field())}, {"n", v.period()}, {"dims", v.dims()}, {"diffs", diffs}};
        } else if constexpr (std::is_same_v<T, GradedModule>) {
          json j = module_body(v);
          j["field"] = field_to_json(v.field());
          j["algebra"] = algebra_to_json(v.algebra());
          j["window"] = {v.lo(), v.hi()};
          return j;
        } else if constexpr (std::is_same_v<T, ChainMap>) {
          json comps = json::array();
          const int lo = v.lo() <= v.hi() ? v.lo() : 0;
          for (int i = v.lo(); i <= v.hi(); ++i) comps.push_back(matrix_to_json(v.component(i)));
          return {{"field", field_to_json(v.field())},
                  {"source", complex_body(v.source())},
                  {"target", complex_body(v.target())},
                  {"lo", lo},
                  {"components", comps}};
        } else if constexpr (std::is_same_v<T, FlagData>) {
          json blocks = json::array();
          for (const auto& row : v.blocks) {
            json r = json::array();
            for (const auto& b : row) r.push_back(matrix_to_json(b));
            blocks.push_back(r);
          }
          return {{"field", field_to_json(v.field)}, {"parts", v.parts}, {"blocks", blocks}};
        } else {
          json terms = json::array();
          for (const auto& t : v.terms()) terms.push_back(module_body(t));
          json diffs = json::array();
          for (const auto& per_degree : v.diffs()) {
            json row = json::array();
            for (const auto& m : per_degree) row.push_back(matrix_to_json(m));
            diffs.push_back(row);
          }
          return {{"field", field_to_json(v.field())},
                  {"algebra", algebra_to_json(v.algebra())},
                  {"window", {v.internal_lo(), v.internal_hi()}},
                  {"lo", v.lo()},
                  {"terms", terms},
                  {"diffs", diffs}};
        }
      },
      d);
  out["kind"] = document_kind(d);
  return out;
}

std::string canonical(const json& j) { return j.dump() + "\n"; }

std::string serialize(const Document& d) { return canonical(to_json(d)); }

}  // namespace perhom
