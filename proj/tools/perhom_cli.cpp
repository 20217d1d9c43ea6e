// Command-line front end. Exit codes: 0 success, 1 invariant or identity
// violation (findings on stdout), 2 input error (message on stderr).

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "perhom/document.hpp"
#include "perhom/koszul.hpp"
#include "perhom/linalg.hpp"
#include "perhom/orbit.hpp"
#include "perhom/suites.hpp"

using namespace perhom;

namespace {

enum Exit { Ok = 0, Violated = 1, BadInput = 2 };

struct Output {
  json body;
  std::vector<std::pair<std::string, std::string>> header;  // table mode only
  json rows = json::array();                                // table mode only
  std::string text;                                         // table mode, preformatted
  int code = Ok;
};

struct Options {
  std::vector<std::string> files;
  std::string suite;
  int n = 0;
  std::vector<int> window;
  std::uint64_t seed = 7;
  std::string format = "json";
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Document load(const std::string& path) { return parse_document(read_input(path)); }

template <typename T>
const T& expect(const Document& d, const char* kind, const std::string& what) {
  if (auto p = std::get_if<T>(&d)) return *p;
  throw InvalidInput(what + ": expected a " + kind + " document, got " + document_kind(d));
}

int require_n(const Options& o) {
  if (o.n < 1) throw InvalidInput("--n must be given and >= 1");
  return o.n;
}

json cohomology_rows(const std::vector<std::pair<int, std::size_t>>& h) {
  json rows = json::array();
  for (auto [d, k] : h) rows.push_back({{"degree", d}, {"dim", k}});
  return rows;
}

json cohomology_rows(const std::vector<std::size_t>& h) {
  json rows = json::array();
  for (std::size_t r = 0; r < h.size(); ++r) rows.push_back({{"degree", r}, {"dim", h[r]}});
  return rows;
}

// Document output; the table shows dimensions and differential ranks.
Output document_output(const Document& d) {
  Output out;
  out.body = to_json(d);
  out.header.push_back({"kind", document_kind(d)});
  if (auto c = std::get_if<BoundedComplex>(&d)) {
    out.header.push_back({"field", c->field().to_string()});
    for (int i = c->lo(); i <= c->hi(); ++i) {
      out.rows.push_back({{"degree", i}, {"dim", c->dim(i)}, {"rank d", rank(c->diff(i))}});
    }
  } else if (auto p = std::get_if<PeriodicComplex>(&d)) {
    out.header.push_back({"field", p->field().to_string()});
    out.header.push_back({"n", std::to_string(p->period())});
    for (int r = 0; r < p->period(); ++r) {
      out.rows.push_back({{"degree", r}, {"dim", p->dim(r)}, {"rank d", rank(p->diff(r))}});
    }
  }
  return out;
}

Output cmd_cohomology(const Options& o) {
  Document d = load(o.files.at(0));
  Output out;
  if (auto c = std::get_if<BoundedComplex>(&d)) {
    out.rows = cohomology_rows(cohomology_dims(*c));
  } else if (auto p = std::get_if<PeriodicComplex>(&d)) {
    out.rows = cohomology_rows(periodic_cohomology(*p));
    out.header.push_back({"n", std::to_string(p->period())});
  } else {
    throw InvalidInput("cohomology: expected a complex or periodic document, got " + document_kind(d));
  }
  out.body = {{"command", "cohomology"}, {"input", document_kind(d)}, {"cohomology", out.rows}};
  return out;
}

Output cmd_compress(const Options& o) {
  const Document d = load(o.files.at(0));
  return document_output(compress(expect<BoundedComplex>(d, "complex", "compress"), require_n(o)));
}

Output cmd_expand(const Options& o) {
  const Document d = load(o.files.at(0));
  if (o.window.size() != 2) throw InvalidInput("expand: --window lo hi is required");
  return document_output(expand_window(expect<PeriodicComplex>(d, "periodic", "expand"), o.window[0], o.window[1]));
}

Output cmd_cone(const Options& o) {
  const Document d = load(o.files.at(0));
  const auto& f = expect<ChainMap>(d, "chain-map", "cone");
  if (o.n > 0) return document_output(periodic_cone(compress_map(f, o.n)));
  return document_output(cone(f).complex);
}

Output cmd_homdim(const Options& o) {
  if (o.files.size() != 2) throw InvalidInput("homdim: two documents are required");
  const Document x = load(o.files[0]);
  const Document y = load(o.files[1]);
  HomReport h;
  if (std::holds_alternative<BoundedComplex>(x)) {
    h = hom_space_dims(std::get<BoundedComplex>(x), expect<BoundedComplex>(y, "complex", "homdim"));
  } else {
    h = periodic_hom_dims(expect<PeriodicComplex>(x, "periodic", "homdim"), expect<PeriodicComplex>(y, "periodic", "homdim"));
  }
  Output out;
  out.body = {{"command", "homdim"}, {"chain_maps", h.chain_maps}, {"null_homotopic", h.null_homotopic}, {"hom_k", h.hom_k()}};
  out.rows.push_back({{"chain maps", h.chain_maps}, {"null-homotopic", h.null_homotopic}, {"Hom_K", h.hom_k()}});
  return out;
}

Output cmd_orbit(const Options& o) {
  if (o.files.size() != 2) throw InvalidInput("orbit-homdim: two documents are required");
  const Document x = load(o.files[0]);
  const Document y = load(o.files[1]);
  const int n = require_n(o);
  auto r = orbit_hom(expect<BoundedComplex>(x, "complex", "orbit-homdim"), expect<BoundedComplex>(y, "complex", "orbit-homdim"), n);
  Output out;
  for (const auto& s : r.summands) out.rows.push_back({{"i", s.index}, {"dim", s.dim}});
  out.body = {{"command", "orbit-homdim"}, {"n", n},           {"summands", out.rows},
              {"total", r.total},          {"periodic_side", r.periodic_side}, {"equal", r.equal()}};
  out.header = {{"n", std::to_string(n)},
                {"total", std::to_string(r.total)},
                {"periodic side", std::to_string(r.periodic_side)}};
  if (!r.equal()) {
    out.code = Violated;
    out.body["findings"] = json::array({{{"total", r.total}, {"periodic_side", r.periodic_side}}});
  }
  return out;
}

Output cmd_periodize(const Options& o) {
  const Document d = load(o.files.at(0));
  const auto& p = expect<PeriodicComplex>(d, "periodic", "periodize");
  Output out;
  auto s = unrolled_contraction(p);
  if (!s) {
    out.code = Violated;
    out.body = {{"command", "periodize"},
                {"contractible", false},
                {"findings", json::array({{{"reason", "no null-homotopy of the identity"}, {"cohomology", periodic_cohomology(p)}}})}};
    out.header.push_back({"contractible", "no"});
    out.rows = cohomology_rows(periodic_cohomology(p));
    return out;
  }
  auto sigma = periodize_null_homotopy(p, *s);
  const bool ok = !check_homotopy(sigma).has_value();
  json comps = json::array();
  for (const auto& m : sigma.components()) comps.push_back(matrix_to_json(m));
  out.body = {{"command", "periodize"}, {"contractible", true}, {"homotopy", comps}, {"verified", ok}};
  out.header.push_back({"contractible", "yes"});
  out.header.push_back({"verified", ok ? "yes" : "no"});
  for (int r = 0; r < p.period(); ++r) {
    out.rows.push_back({{"degree", r}, {"rank sigma", rank(sigma.component(r))}});
  }
  if (!ok) out.code = Violated;
  return out;
}

json lambda_json(const std::vector<std::vector<Matrix>>& actions) {
  json out = json::array();
  for (const auto& per_term : actions) {
    json row = json::array();
    for (const auto& m : per_term) row.push_back(matrix_to_json(m));
    out.push_back(row);
  }
  return out;
}

Output cmd_bgg(const Options& o) {
  const Document d = load(o.files.at(0));
  Output out;
  if (auto m = std::get_if<GradedModule>(&d)) {
    auto b = bgg_module(*m);
    out.body = {{"complex", to_json(Document(b.complex))}, {"lambda_action", lambda_json(b.lambda_action)}};
    out.rows = cohomology_rows(cohomology_dims(b.complex));
  } else if (auto mc = std::get_if<GradedComplex>(&d)) {
    if (o.n > 0) {
      auto b = bgg_periodic(compress(*mc, o.n));
      out.body = {{"complex", to_json(Document(b.complex))}, {"lambda_action", lambda_json(b.lambda_action)}};
      out.rows = cohomology_rows(periodic_cohomology(b.complex));
    } else {
      auto b = bgg_complex(*mc);
      out.body = {{"complex", to_json(Document(b.complex))}, {"lambda_action", lambda_json(b.lambda_action)}};
      out.rows = cohomology_rows(cohomology_dims(b.complex));
    }
  } else {
    throw InvalidInput("bgg: expected a graded-module or graded-complex document, got " + document_kind(d));
  }
  out.body["command"] = "bgg";
  out.body["cohomology"] = out.rows;
  return out;
}

Output cmd_tensor(const Options& o) {
  if (o.files.size() != 2) throw InvalidInput("tensor: two documents are required");
  const Document x = load(o.files[0]);
  const Document y = load(o.files[1]);
  const auto& xc = expect<BoundedComplex>(x, "complex", "tensor");
  if (auto p = std::get_if<PeriodicComplex>(&y)) return document_output(tensor_periodic(xc, *p));
  return document_output(tensor_complex(xc, expect<BoundedComplex>(y, "complex", "tensor")));
}

Output cmd_verify(const Options& o) {
  if (!is_suite(o.suite)) {
    std::string names;
    for (const auto& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
    throw InvalidInput("verify: unknown suite \"" + o.suite + "\" (known: " + names + ")");
  }
  auto r = run_suite(o.suite, o.seed);
  Output out;
  out.body = to_json(r);
  out.code = r.holds() ? Ok : Violated;
  out.text = to_table(r);
  return out;
}

void print(const Output& out, const std::string& format) {
  if (format == "json") {
    std::cout << canonical(out.body);
    return;
  }
  std::cout << out.text;
  for (const auto& [k, v] : out.header) std::cout << k << std::string(k.size() < 14 ? 14 - k.size() : 1, ' ') << v << "\n";
  if (!out.rows.empty()) std::cout << aligned_table(out.rows);
}

void report_input_error(const std::string& message, const std::string& pointer = {}) {
  json e = {{"error", message}};
  if (!pointer.empty()) e["pointer"] = pointer;
  std::cerr << canonical(e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with bounded and periodic complexes over Q and F_p."};
  app.require_subcommand(1);
  Options o;

  using Runner = Output (*)(const Options&);
  std::vector<std::pair<CLI::App*, Runner>> commands;
  auto add = [&](const char* name, const char* help, Runner run, int files) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (files > 0) sub->add_option("files", o.files, "input document(s), - for stdin")->required()->expected(files);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
    commands.push_back({sub, run});
    return sub;
  };
  add("cohomology", "dimensions of cohomology", cmd_cohomology, 1);
  add("compress", "periodic compression of a complex", cmd_compress, 1)->add_option("--n", o.n, "period")->required();
  add("expand", "unroll a periodic complex on a window", cmd_expand, 1)
      ->add_option("--window", o.window, "lo hi")
      ->expected(2)
      ->required();
  add("cone", "mapping cone of a chain map", cmd_cone, 1)->add_option("--n", o.n, "compress the map first");
  add("homdim", "dimension of Hom in the homotopy category", cmd_homdim, 2);
  add("orbit-homdim", "Hom in the orbit category, computed two ways", cmd_orbit, 2)
      ->add_option("--n", o.n, "period")
      ->required();
  add("periodize", "periodic null-homotopy of a contractible periodic complex", cmd_periodize, 1);
  add("bgg", "BGG complex of a graded module or complex", cmd_bgg, 1)->add_option("--n", o.n, "periodic version");
  add("tensor", "tensor a complex with a bounded or periodic complex", cmd_tensor, 2);
  CLI::App* verify = add("verify", "run a seeded verification suite", cmd_verify, 0);
  verify->add_option("suite", o.suite, "suite name")->required();
  verify->add_option("--seed", o.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_input_error(e.what());
    return BadInput;
  }

  for (const auto& [sub, run] : commands) {
    if (!sub->parsed()) continue;
    try {
      Output out = run(o);
      print(out, o.format);
      return out.code;
    } catch (const ParseError& e) {
      report_input_error(e.what(), e.pointer());
      return BadInput;
    } catch (const InvariantViolation& e) {
      std::cout << canonical({{"findings", json::array({{{"error", e.what()}}})}});
      return Violated;
    } catch (const Error& e) {
      report_input_error(e.what());
      return BadInput;
    } catch (const std::out_of_range&) {
      report_input_error("missing input document");
      return BadInput;
    }
  }
  return BadInput;
}
