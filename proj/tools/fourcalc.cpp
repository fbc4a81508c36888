// fourcalc: command-line front end.
// Exit status: 0 all checks passed, 1 a check failed, 2 usage or parse error.

#include "fourcalc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fc = fourcalc;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

int emit(const fc::VerificationReport& r, bool json) {
  if (json) std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.to_text();
  return r.all_passed() ? kOk : kCheckFailed;
}

void print_matrix(const fc::IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) std::cout << (j ? " " : "") << m(i, j).str();
    std::cout << "]\n";
  }
}

void print_matrix(const fc::RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) std::cout << (j ? " " : "") << fc::to_string(m(i, j));
    std::cout << "]\n";
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw fc::ParseError("expected an integer, got '" + part + "'", 0);
    }
    if (used != part.size()) throw fc::ParseError("trailing characters in '" + part + "'", used);
    out.push_back(v);
  }
  if (out.empty()) throw fc::ParseError("empty integer list", 0);
  return out;
}

int run_family(const std::string& which, std::int64_t n, bool json, const std::string& model_out) {
  fc::FamilyResult r = which == "xn"   ? fc::build_Xn(n)
                       : which == "b7" ? fc::build_b7_family(n)
                       : which == "b8" ? fc::build_b8_family(n)
                                       : fc::build_Qn(n);
  if (!model_out.empty()) {
    std::ofstream out(model_out);
    if (!out) throw fc::PreconditionError("cannot write '" + model_out + "'");
    out << fc::io::model_to_json(r.model).dump(2) << "\n";
  }
  if (!json) {
    const int code = emit(r.report, false);
    std::cout << "model " << r.model.name() << ": " << fc::fingerprint(r.model).to_string() << "\n";
    for (const auto& e : r.model.sw().entries())
      std::cout << "  SW(" << e.cls.to_string() << ") = " << e.value.str() << "\n";
    return code;
  }
  auto j = r.report.to_json();
  j["model"] = fc::io::model_to_json(r.model);
  std::cout << j.dump(2) << "\n";
  return r.report.all_passed() ? kOk : kCheckFailed;
}

int run_monodromy(const std::string& word, const std::optional<std::string>& equals) {
  const auto w = fc::parse_word(word);
  std::optional<fc::MCGWord> rhs;
  if (equals) rhs = fc::parse_word(*equals);
  const auto r = fc::verify_factorization(w, rhs);
  std::cout << "lhs " << r.lhs.to_string() << " (" << fc::conjugacy_type(r.lhs) << ")\n";
  std::cout << "rhs " << r.rhs.to_string() << " (" << fc::conjugacy_type(r.rhs) << ")\n";
  for (const auto& f : r.factors) {
    std::cout << "  " << f.text << ": " << f.factor_matrix.to_string() << " " << f.factor_type;
    if (f.nodal_count) std::cout << ", " << f.nodal_count << " nodal";
    std::cout << "\n";
  }
  std::cout << (r.equal ? "equal" : "not equal") << "\n";
  return r.equal ? kOk : kCheckFailed;
}

int run_plumbing(std::optional<std::int64_t> p, const std::string& weights, bool invert, bool boundary) {
  std::optional<fc::PlumbingChain> chain;
  if (p) {
    chain = fc::cp_chain(*p);
  } else {
    std::vector<fc::Integer> w;
    for (auto x : parse_int_list(weights)) w.emplace_back(x);
    chain = fc::PlumbingChain::linear(std::move(w), "chain");
  }
  const auto pm = fc::plumbing_matrix(*chain);
  std::cout << chain->name() << " weights";
  for (const auto& w : chain->weights()) std::cout << " " << w.str();
  std::cout << "\nintersection matrix\n";
  print_matrix(pm.matrix);
  std::cout << "det " << pm.determinant.str() << "\n";
  std::vector<fc::Integer> cf;
  bool all_le_minus_two = true;
  for (const auto& w : chain->weights()) {
    cf.push_back(-w);
    all_le_minus_two = all_le_minus_two && w <= -2;
  }
  if (all_le_minus_two) std::cout << "continued fraction " << fc::to_string(fc::negative_continued_fraction(cf)) << "\n";
  if (invert) {
    std::cout << "inverse\n";
    print_matrix(pm.inverse);
  }
  if (boundary) {
    const auto l = fc::boundary_lens_space(*chain);
    std::cout << "boundary " << l.to_string() << ", equivalent twists";
    for (const auto& q : l.residue_orbit()) std::cout << " " << q.str();
    std::cout << "\n";
  }
  return kOk;
}

int run_sw(const std::string& knots, const std::vector<std::string>& alexanders) {
  std::vector<fc::LaurentPolynomial> polys;
  if (!knots.empty())
    for (auto n : parse_int_list(knots)) polys.push_back(fc::alexander_twist(n));
  for (const auto& a : alexanders) polys.push_back(fc::LaurentPolynomial::parse(a));
  if (polys.empty()) throw fc::ParseError("give --knots or --alexander", 0);
  const auto q = fc::e1_surgery_generating(polys);
  std::cout << "generating function " << q.to_string() << "\n";
  for (const auto& [j, c] : fc::e1_knot_surgery_coefficients(polys))
    std::cout << "  SW(" << j << "T) = " << c.str() << "\n";
  return kOk;
}

int run_lattice(const std::string& op, const std::string& model_file, const std::vector<std::string>& classes) {
  std::ifstream in(model_file);
  if (!in) throw fc::PreconditionError("cannot read '" + model_file + "'");
  fc::io::json j;
  try {
    j = fc::io::json::parse(in);
  } catch (const fc::io::json::parse_error& e) {
    throw fc::ParseError(std::string("model file: ") + e.what(), e.byte);
  }
  const auto model = fc::io::model_from_json(j);
  std::vector<fc::HomologyClass> cs;
  for (const auto& c : classes) cs.push_back(model.parse(c));
  if (op == "pair") {
    if (cs.size() != 2) throw fc::ParseError("pair needs two --class options", 0);
    std::cout << fc::pair(cs[0], cs[1]).str() << "\n";
  } else if (op == "square") {
    if (cs.size() != 1) throw fc::ParseError("square needs one --class option", 0);
    std::cout << fc::square(cs[0]).str() << "\n";
  } else {
    if (cs.size() != 1) throw fc::ParseError("characteristic needs one --class option", 0);
    const bool c = fc::is_characteristic(cs[0]);
    std::cout << (c ? "true" : "false");
    if (c) std::cout << " d=" << fc::dimension(model, cs[0]).str();
    std::cout << "\n";
    return c ? kOk : kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fourcalc: homological surgery calculus for 4-manifolds"};
  app.require_subcommand(1);

  auto* vp = app.add_subcommand("verify-paper", "run the golden checks");
  std::string only;
  bool vp_json = false;
  vp->add_option("--only", only, "restrict to one module")
      ->check(CLI::IsMember(fc::verification_modules()));
  vp->add_flag("--json", vp_json, "machine-readable report");

  auto* fam = app.add_subcommand("family", "build one member of a family");
  std::string which;
  std::int64_t n = 0;
  bool fam_json = false;
  std::string model_out;
  fam->add_option("family", which, "xn, b7, b8 or qn")->required()->check(CLI::IsMember({"xn", "b7", "b8", "qn"}));
  fam->add_option("--n", n, "family parameter")->required()->check(CLI::PositiveNumber);
  fam->add_flag("--json", fam_json, "machine-readable report");
  fam->add_option("--model-out", model_out, "write the resulting model as JSON");

  auto* mono = app.add_subcommand("monodromy", "SL(2,Z) words");
  mono->require_subcommand(1);
  auto* check = mono->add_subcommand("check", "evaluate a word and compare");
  std::string word;
  std::string equals;
  check->add_option("word", word, "word in a, b, A = a^-1, B = b^-1")->required();
  check->add_option("--equals", equals, "word to compare with (default: identity)");

  auto* plumb = app.add_subcommand("plumbing", "plumbing chains");
  plumb->require_subcommand(1);
  auto* cp = plumb->add_subcommand("cp", "the chain C_p or a weighted linear chain");
  std::int64_t p = 0;
  std::string weights;
  bool invert = false, boundary = false;
  auto* p_opt = cp->add_option("--p", p, "C_p parameter");
  auto* w_opt = cp->add_option("--weights", weights, "comma-separated weights");
  p_opt->excludes(w_opt);
  cp->add_flag("--invert", invert, "print the inverse matrix");
  cp->add_flag("--boundary", boundary, "print the boundary lens space");

  auto* sw = app.add_subcommand("sw", "Seiberg-Witten tables");
  sw->require_subcommand(1);
  auto* e1s = sw->add_subcommand("e1-surgery", "knot surgeries on fibers of E(1)");
  std::string knots;
  std::vector<std::string> alexanders;
  e1s->add_option("--knots", knots, "twist knot parameters n1,n2,...");
  e1s->add_option("--alexander", alexanders, "extra Alexander polynomials, e.g. 't - 1 + t^-1'");

  auto* lat = app.add_subcommand("lattice", "pairings on a saved model");
  lat->require_subcommand(1);
  std::string lat_op, model_file;
  std::vector<std::string> classes;
  for (const char* op : {"pair", "square", "characteristic"}) {
    auto* sub = lat->add_subcommand(op, std::string(op) + " of classes");
    sub->add_option("--model", model_file, "model JSON file")->required();
    sub->add_option("--class", classes, "class expression")->required();
    sub->callback([&lat_op, op] { lat_op = op; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*vp) return emit(fc::verify_paper(only.empty() ? std::nullopt : std::optional<std::string>(only)), vp_json);
    if (*fam) return run_family(which, n, fam_json, model_out);
    if (*check) return run_monodromy(word, equals.empty() ? std::nullopt : std::optional<std::string>(equals));
    if (*cp) {
      if (!*p_opt && !*w_opt) throw fc::ParseError("give --p or --weights", 0);
      return run_plumbing(*p_opt ? std::optional<std::int64_t>(p) : std::nullopt, weights, invert, boundary);
    }
    if (*e1s) return run_sw(knots, alexanders);
    if (*lat) return run_lattice(lat_op, model_file, classes);
  } catch (const fc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const fc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
