#include "spinkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "spinkit/combing.hpp"
#include "spinkit/heegaard.hpp"
#include "spinkit/linkgeom.hpp"
#include "spinkit/surfaces.hpp"
#include "spinkit/surgery.hpp"
#include "spinkit/text_io.hpp"

namespace spinkit::cli {

namespace {

using surgery::FramedLinkMatrix;

constexpr const char* kFormats = R"fmt(File formats. All text formats are whitespace-tolerant: tokens are separated
by any run of blanks, blank lines are ignored and '#' starts a comment that
runs to the end of the line. Integers are decimal with an optional sign;
rationals are written p or p/q.

  link      framedlink n=<n>
            <n> <n>
            <n*n integers, row-major: the symmetric linking matrix with the
             framings on the diagonal>

  script    one move per line, component indices counted from 1:
              blowup +1|-1           add a distant unknot with that framing
              blowdown <i>           remove a +-1 framed unlinked component
              slide <i> <j> +1|-1    slide component i over component j

  heegaard  heegaard g=<g>
            <g> <g>
            <g*g integers, row-major: row j holds the intersection numbers of
             c_1..c_g with the meridian m_j>
            <g integers: the framings of c_1..c_g>
            optionally:
            linking
            <g> <g>
            <g*g integers: symmetric, zero diagonal>

  curve     curve <name> <k>
            <k lines "x y z" of rationals: vertices of a closed polygon>

  framed    a curve block followed by
            normal <name>
            <k lines "x y z" of rationals: one normal vector per vertex>

  ledger    group free=<r> torsion=<d1>,<d2>,...    (torsion= may be empty)
            combing <id> euler <coords>
            pair <id> <id> alpha+ <coords> alpha- <coords>
            surgery <id> <id> beta <coords>
            <coords> is "(c1,...,cm)" without blanks, torsion residues first and
            free coordinates last; ids count from 0 in declaration order and
            combing 0 is the base. "()" is the element of the trivial group.

  surface   o<g> (orientable, genus g) or n<h> (connected sum of h projective
            planes), given on the command line

Exit status: 0 ok; 1 mathematical failure or a failed verification check;
2 usage error, unreadable or malformed input.)fmt";

// Load failures: malformed files and rejected inputs, exit 2.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mathematical failure inside a command, exit 1.
struct MathFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json jint(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Json jints(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

// Positions of set bits, 1-based to match component numbering in files.
Json members(const F2Vector& x) {
  Json a = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.get(i)) a.push_back(i + 1);
  return a;
}

Json bit_list(const std::vector<F2Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(v.to_string());
  return a;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

bool odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

// Invariant factors other than 1; zeros stand for free summands.
std::vector<Int> nontrivial_factors(const IntMatrix& q) {
  std::vector<Int> out;
  if (q.empty()) return out;
  for (const auto& d : smith_normal_form(q).diagonal())
    if (d != 1) out.push_back(d);
  return out;
}

std::string factor_text(const std::vector<Int>& f) {
  if (f.empty()) return "[]";
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + f[i].get_str();
  return s + "]";
}

class Context {
 public:
  Context(Report& report, const FileReader& read) : report_(report), read_(read) {}

  std::string input(const std::string& path) {
    std::string text;
    try {
      text = read_(path);
    } catch (const InputError& e) {
      throw LoadError(e.what());
    }
    inputs_.push_back(text);
    return text;
  }

  void literal(const std::string& token) { inputs_.push_back(token); }

  template <class F>
  auto load(const std::string& path, F parse) {
    const std::string text = input(path);
    try {
      return parse(text, path);
    } catch (const ParseError& e) {
      throw LoadError(e.what());
    } catch (const std::invalid_argument& e) {
      throw LoadError(path + ": " + e.what());
    }
  }

  void check(std::string name, bool passed, std::string detail) {
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  Json& result() { return report_.result; }
  const std::vector<std::string>& inputs() const { return inputs_; }

 private:
  Report& report_;
  const FileReader& read_;
  std::vector<std::string> inputs_;
};

FramedLinkMatrix load_link(Context& c, const std::string& path) {
  return c.load(path, [](const std::string& t, const std::string& s) { return surgery::parse_link(t, s); });
}

void check_cokernel(Context& c, const FramedLinkMatrix& before, const FramedLinkMatrix& after) {
  const auto a = nontrivial_factors(before.linking());
  const auto b = nontrivial_factors(after.linking());
  c.check("cokernel", a == b, "invariant factors " + factor_text(a) + (a == b ? " = " : " != ") + factor_text(b));
}

struct EvenizeArgs {
  std::string link;
  std::size_t max_depth = surgery::EvenizeOptions{}.max_depth;
  std::size_t max_stabilizations = surgery::EvenizeOptions{}.max_stabilizations;
};

void cmd_evenize(Context& c, const EvenizeArgs& a) {
  const auto f = load_link(c, a.link);
  surgery::EvenizeOptions opts;
  opts.max_depth = a.max_depth;
  opts.max_stabilizations = a.max_stabilizations;
  const auto r = surgery::evenize(f, opts);

  auto& out = c.result();
  out["success"] = r.success;
  out["phase"] = std::string(surgery::phase_name(r.phase));
  out["detail"] = r.detail;
  out["moves"] = r.script.size();
  out["script"] = surgery::format_script(r.script);
  out["link"] = surgery::format_link(r.result);

  FramedLinkMatrix replayed;
  bool replay_ok = false;
  std::string replay_detail;
  try {
    replayed = surgery::apply_script(f, r.script);
    replay_ok = replayed == r.result;
    replay_detail = replay_ok ? "script replays to the reported link" : "replay differs from the reported link";
  } catch (const surgery::ScriptError& e) {
    replay_detail = std::string("script does not replay: ") + e.what();
  }
  c.check("replay", replay_ok, replay_detail);

  std::size_t odd_count = 0;
  for (std::size_t i = 0; i < r.result.size(); ++i) odd_count += odd(r.result.linking()(i, i));
  c.check("parity", odd_count == 0, std::to_string(odd_count) + " odd framing(s)");
  check_cokernel(c, f, r.result);
  if (!r.success) out["error"] = "no even presentation found: " + r.detail;
}

void cmd_spin_count(Context& c, const std::string& path) {
  const auto f = load_link(c, path);
  const Int n = surgery::spin_structure_count(f);
  const auto h = surgery::first_homology(f);
  c.result()["count"] = jint(n);
  c.result()["components"] = f.size();
  c.result()["f2_rank"] = f.size() == 0 ? 0 : F2Matrix::reduce(f.linking()).rank();
  const Int hom = h.hom_to_z2_count();
  c.check("hom-count", hom == n, "|Hom(" + h.to_string() + ", Z/2)| = " + hom.get_str());
}

void cmd_homology(Context& c, const std::string& path) {
  const auto f = load_link(c, path);
  const auto h = surgery::first_homology(f);
  c.result()["group"] = h.to_string();
  c.result()["free_rank"] = h.free_rank();
  c.result()["torsion"] = jints(h.torsion());
  const Int det = f.size() == 0 ? Int(1) : f.linking().determinant();
  Int order = 1;
  for (const auto& d : h.torsion()) order *= d;
  bool ok;
  std::string detail;
  if (det == 0) {
    ok = h.free_rank() > 0;
    detail = "det 0, free rank " + std::to_string(h.free_rank());
  } else {
    ok = h.free_rank() == 0 && order == abs(det);
    detail = "|det| " + Int(abs(det)).get_str() + ", torsion order " + order.get_str();
  }
  c.check("determinant", ok, detail);
}

void cmd_char_sublink(Context& c, const std::string& path) {
  const auto f = load_link(c, path);
  const auto s = surgery::characteristic_solutions(f);
  c.result()["x"] = s.x.to_string();
  c.result()["components"] = members(s.x);
  c.result()["solution_dimension"] = s.solution_dimension();
  c.result()["kernel"] = bit_list(s.kernel);

  // Q x against diag(Q), entrywise on the integers.
  const auto& q = f.linking();
  bool ok = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int sum = 0;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (s.x.get(j)) sum += q(i, j);
    ok = ok && odd(sum) == odd(q(i, i));
  }
  c.check("characteristic", ok, "Q x = diag(Q) mod 2");
  bool kernel_ok = true;
  for (const auto& k : s.kernel) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      Int sum = 0;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (k.get(j)) sum += q(i, j);
      kernel_ok = kernel_ok && !odd(sum);
    }
  }
  c.check("kernel", kernel_ok, std::to_string(s.kernel.size()) + " kernel vector(s) annihilated mod 2");
}

void cmd_parity(Context& c, const std::string& path) {
  const auto f = load_link(c, path);
  const auto p = surgery::handle_parity(f);
  c.result()["parity"] = p.parity.to_string();
  c.result()["odd_components"] = members(p.parity);
  c.result()["all_even"] = p.all_even;
  bool ok = p.parity.size() == f.size();
  bool any_odd = false;
  for (std::size_t i = 0; ok && i < f.size(); ++i) {
    ok = p.parity.get(i) == odd(f.framing(i));
    any_odd = any_odd || odd(f.framing(i));
  }
  c.check("diagonal", ok && p.all_even == !any_odd, "parity vector matches the framings");
}

void cmd_replay(Context& c, const std::string& link_path, const std::string& script_path) {
  const auto f = load_link(c, link_path);
  const auto s = c.load(script_path, [](const std::string& t, const std::string& src) { return surgery::parse_script(t, src); });
  c.result()["moves"] = s.size();
  FramedLinkMatrix g;
  try {
    g = surgery::apply_script(f, s);
  } catch (const surgery::ScriptError& e) {
    c.result()["failed_move"] = e.position() + 1;
    c.check("script", false, e.what());
    throw MathFailure(std::string("move ") + std::to_string(e.position() + 1) + " is not applicable: " + e.what());
  }
  c.result()["link"] = surgery::format_link(g);
  c.check("symmetric", g.linking().is_symmetric(), "linking matrix is symmetric");
  check_cokernel(c, f, g);
}

void cmd_heegaard(Context& c, const std::string& path) {
  const auto p = c.load(path, [](const std::string& t, const std::string& s) { return heegaard::parse_problem(t, s); });
  const auto s = heegaard::solve_twists(p);
  const F2Matrix a2 = F2Matrix::reduce(p.incidence());
  const F2Vector f2 = F2Vector::from_ints(p.framings());
  c.result()["genus"] = p.genus();
  c.result()["solvable"] = s.solvable;
  if (!s.solvable) {
    c.result()["certificate"] = s.certificate->to_string();
    const bool cert = (a2.transpose() * *s.certificate).is_zero() && s.certificate->dot(f2);
    c.check("certificate", cert, "y^T A = 0 and y.f = 1 mod 2");
    c.check("solvable", false, "the twist system has no solution mod 2");
    throw MathFailure("twist system is inconsistent mod 2");
  }
  const auto x = heegaard::to_integers(s.x);
  const auto twisted = heegaard::apply_twists(p, x);
  c.result()["x"] = s.x.to_string();
  c.result()["kernel"] = bit_list(s.kernel);
  c.result()["framings"] = jints(twisted);
  c.result()["link"] = surgery::format_link(heegaard::to_framed_link(p, x));
  c.check("linear", a2 * s.x == f2, "A x = f mod 2");
  std::size_t odd_count = 0;
  for (const auto& v : twisted) odd_count += odd(v);
  c.check("even", odd_count == 0, std::to_string(odd_count) + " odd framing(s) after twisting");
}

linkgeom::PolyCurve3 load_curve(Context& c, const std::string& path) {
  return c.load(path, [](const std::string& t, const std::string& s) { return linkgeom::parse_curve(t, s); });
}

std::pair<linkgeom::PolyCurve3, linkgeom::NormalField> load_framed(Context& c, const std::string& path) {
  return c.load(path, [](const std::string& t, const std::string& s) { return linkgeom::parse_framed_curve(t, s); });
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void cmd_link(Context& c, const std::string& pa, const std::string& pb) {
  const auto a = load_curve(c, pa);
  const auto b = load_curve(c, pb);
  std::int64_t lk;
  try {
    lk = linkgeom::linking_number(a, b);
  } catch (const linkgeom::GeometryError& e) {
    throw MathFailure(e.what());
  }
  const double gauss = linkgeom::gauss_linking(a, b);
  c.result()["linking_number"] = lk;
  c.result()["gauss"] = fixed6(gauss);
  c.check("gauss", std::fabs(gauss - static_cast<double>(lk)) < 0.1, "Gauss integral " + fixed6(gauss));
}

std::int64_t checked_self_linking(Context& c, const linkgeom::PolyCurve3& k, const linkgeom::NormalField& n) {
  linkgeom::Pushoff p = linkgeom::pushoff(k, n);
  const std::int64_t sl = linkgeom::linking_number(k, p.curve);
  c.result()["self_linking"] = sl;
  c.result()["eps"] = rational_text(p.eps);

  // K + (eps/2) n built directly, as an independent stability check
  const linkgeom::Rational half = p.eps / 2;
  std::vector<linkgeom::Vec3> v;
  for (std::size_t i = 0; i < k.size(); ++i) v.push_back(k.vertex(i) + half * n.at(i));
  try {
    const std::int64_t again = linkgeom::linking_number(k, linkgeom::PolyCurve3(v, k.name() + "'"));
    c.check("stable", again == sl, "lk at eps/2 is " + std::to_string(again));
  } catch (const std::exception& e) {
    c.check("stable", false, e.what());
  }
  return sl;
}

void cmd_selflink(Context& c, const std::string& path) {
  const auto [k, n] = load_framed(c, path);
  try {
    checked_self_linking(c, k, n);
  } catch (const linkgeom::GeometryError& e) {
    throw MathFailure(e.what());
  }
}

void cmd_extends(Context& c, const std::string& path) {
  const auto [k, n] = load_framed(c, path);
  std::int64_t sl;
  try {
    sl = checked_self_linking(c, k, n);
  } catch (const linkgeom::GeometryError& e) {
    throw MathFailure(e.what());
  }
  const bool ext = linkgeom::extends_over_seifert(k, n);
  c.result()["extends"] = ext;
  c.check("parity", ext == (sl % 2 != 0), "self-linking " + std::to_string(sl));
  const int loop = linkgeom::so3_loop_class(1, sl);
  c.check("so3", (loop == 0) == ext, "loop class " + std::to_string(loop) + " for a disk");
}

void cmd_surface(Context& c, const std::string& token) {
  c.literal(token);
  std::optional<surfaces::ClosedSurface> s;
  try {
    s = surfaces::ClosedSurface::parse(token);
  } catch (const std::invalid_argument& e) {
    throw LoadError(std::string("<surface>: ") + e.what());
  }
  const auto chi = surfaces::euler_characteristic(*s);
  const auto t = surfaces::pairing_terms(*s);
  const int w = surfaces::pairing_w_Fv(*s);
  auto& out = c.result();
  out["surface"] = s->token();
  out["orientable"] = s->is_orientable();
  out["euler_characteristic"] = chi;
  out["tangent"] = t.tangent;
  out["normal_cup"] = t.normal_cup;
  out["pairing"] = w;
  const std::int64_t expect_chi = s->is_orientable() ? 2 - 2 * s->genus() : 2 - s->crosscaps();
  c.check("euler", chi == expect_chi, "chi " + std::to_string(chi));
  c.check("pairing", w == (t.tangent + t.normal_cup) % 2 && w == 0, "tangent + normal_cup = " + std::to_string(w));
}

struct LedgerArgs {
  std::string path;
  std::vector<std::uint32_t> compare;
  bool parallelize = false;
};

void cmd_ledger(Context& c, const LedgerArgs& a) {
  auto l = c.load(a.path, [](const std::string& t, const std::string& s) { return combing::parse_ledger(t, s); });
  auto& out = c.result();
  out["group"] = l.group().to_string();
  out["combings"] = l.size();
  out["base_euler"] = l.euler(l.base()).to_string();
  const auto issues = l.validate();
  c.check("validate", issues.empty(), issues.empty() ? "ledger is consistent" : issues.front());
  if (!issues.empty()) {
    out["issues"] = issues;
    throw MathFailure("ledger is inconsistent");
  }

  const auto even = is_even(l.group(), l.euler(l.base()));
  out["base_even"] = even.even;
  out["mod2_reduction"] = mod2_reduction(l.group(), l.euler(l.base())).to_string();
  if (even.even) {
    const bool half_ok = even.half->scaled(2) == l.euler(l.base());
    c.check("half", half_ok, "2 * " + even.half->to_string() + " = e");
  }

  if (a.compare.size() == 2) {
    const combing::CombingId v{a.compare[0]}, w{a.compare[1]};
    try {
      const auto alpha = l.compare(v, w);
      out["alpha"] = alpha.to_string();
      c.check("difference", alpha.scaled(2) == l.euler(v) - l.euler(w), "2 alpha = e(v) - e(w)");
    } catch (const combing::UnknownCombing& e) {
      throw LoadError(std::string("--compare: ") + e.what());
    } catch (const combing::NotConnected& e) {
      throw MathFailure(e.what());
    }
  }

  if (a.parallelize) {
    const auto d = l.is_parallelizable();
    out["parallelizable"] = d.parallelizable;
    if (d.parallelizable) {
      out["witness"] = d.witness->value;
      out["beta"] = d.beta->to_string();
      c.check("witness", l.euler(*d.witness).is_zero(), "witness has Euler class 0");
    }
    out["ledger"] = combing::serialize(l);
    c.check("validate-after", l.validate().empty(), "ledger laws hold after the decision");
  }
}

struct Parsed {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string a, b;
  EvenizeArgs evenize;
  LedgerArgs ledger;
};

std::unique_ptr<CLI::App> build_app(Parsed& p) {
  auto app = std::make_unique<CLI::App>("Spin structures, framings and Kirby calculus on framed links.", "spinkit");
  app->require_subcommand(1, 1);
  app->fallthrough();
  app->add_option("--format", p.format, "Report encoding")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app->add_option("--seed", p.seed, "Seed for randomized procedures")->capture_default_str();
  app->footer(kFormats);

  auto* ev = app->add_subcommand("evenize", "Kirby moves making every framing even");
  ev->add_option("link", p.evenize.link, "link file")->required();
  ev->add_option("--max-depth", p.evenize.max_depth, "fallback search depth")->capture_default_str();
  ev->add_option("--max-stabilizations", p.evenize.max_stabilizations, "blow-ups allowed")->capture_default_str();

  app->add_subcommand("spin-count", "number of spin structures of the surgered manifold")
      ->add_option("link", p.a, "link file")->required();
  app->add_subcommand("homology", "first homology (cokernel of the linking matrix)")
      ->add_option("link", p.a, "link file")->required();
  app->add_subcommand("char-sublink", "characteristic sublinks: solutions of Q x = diag(Q) mod 2")
      ->add_option("link", p.a, "link file")->required();
  app->add_subcommand("parity", "framing parities")->add_option("link", p.a, "link file")->required();
  auto* rp = app->add_subcommand("replay", "apply a move script to a link");
  rp->add_option("link", p.a, "link file")->required();
  rp->add_option("script", p.b, "script file")->required();
  app->add_subcommand("heegaard-solve", "meridian twists making every framing even")
      ->add_option("problem", p.a, "heegaard file")->required();
  auto* lk = app->add_subcommand("link", "linking number of two polygonal curves");
  lk->add_option("curveA", p.a, "curve file")->required();
  lk->add_option("curveB", p.b, "curve file")->required();
  app->add_subcommand("selflink", "self-linking of a framed curve")->add_option("framed", p.a, "framed curve file")->required();
  app->add_subcommand("extends", "does the framing extend over a Seifert surface")
      ->add_option("framed", p.a, "framed curve file")->required();
  app->add_subcommand("surface", "pairing of w(F_v) with a closed surface")
      ->add_option("token", p.a, "o<g> or n<h>")->required();
  auto* lg = app->add_subcommand("ledger", "check a combing ledger");
  lg->add_option("ledger", p.ledger.path, "ledger file")->required();
  lg->add_option("--compare", p.ledger.compare, "comparison class of two combing ids")->expected(2);
  lg->add_flag("--parallelize", p.ledger.parallelize, "decide parallelizability and emit the updated ledger");
  return app;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void text_value(std::ostringstream& os, const std::string& key, const Json& v, const std::string& indent) {
  if (v.is_object()) {
    os << indent << key << ":\n";
    for (const auto& [k, x] : v.items()) text_value(os, k, x, indent + "  ");
  } else if (v.is_array()) {
    os << indent << key << ":";
    for (const auto& x : v) os << " " << scalar_text(x);
    os << "\n";
  } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
    os << indent << key << ":\n";
    std::istringstream lines(v.get<std::string>());
    for (std::string line; std::getline(lines, line);) os << indent << "  | " << line << "\n";
  } else {
    os << indent << key << ": " << scalar_text(v) << "\n";
  }
}

const char* status_word(const Report& r) {
  if (r.exit_status == 0) return "ok";
  return r.exit_status == 1 ? "failed" : "error";
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
  return s;
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_digest(const std::vector<std::string>& inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (const auto& s : inputs) {
    for (unsigned char ch : s) mix(ch);
    mix(0);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string help_text() {
  Parsed p;
  return build_app(p)->help();
}

Report dispatch(const std::vector<std::string>& args, const FileReader& read) {
  Report report;
  report.command = args;
  Parsed p;
  auto app = build_app(p);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format" || args[i] == "--seed") {
      ++i;
      continue;
    }
    if (args[i].starts_with("-")) continue;
    if (!app->get_subcommand_no_throw(args[i])) {
      report.usage_error = "error: unknown command '" + args[i] + "'\n\n" + app->help();
      report.exit_status = 2;
      return report;
    }
    break;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app->parse(rev);
  } catch (const CLI::CallForHelp&) {
    report.help = app->help();
    return report;
  } catch (const CLI::CallForAllHelp&) {
    report.help = app->help();
    return report;
  } catch (const CLI::ParseError& e) {
    report.usage_error = std::string("error: ") + e.what() + "\n\n" + app->help("", CLI::AppFormatMode::Normal);
    report.exit_status = 2;
    return report;
  }
  report.format = p.format == "json" ? Format::Json : Format::Text;
  report.seed = p.seed;
  const std::string name = app->get_subcommands().front()->get_name();

  Context c(report, read);
  try {
    if (name == "evenize") cmd_evenize(c, p.evenize);
    else if (name == "spin-count") cmd_spin_count(c, p.a);
    else if (name == "homology") cmd_homology(c, p.a);
    else if (name == "char-sublink") cmd_char_sublink(c, p.a);
    else if (name == "parity") cmd_parity(c, p.a);
    else if (name == "replay") cmd_replay(c, p.a, p.b);
    else if (name == "heegaard-solve") cmd_heegaard(c, p.a);
    else if (name == "link") cmd_link(c, p.a, p.b);
    else if (name == "selflink") cmd_selflink(c, p.a);
    else if (name == "extends") cmd_extends(c, p.a);
    else if (name == "surface") cmd_surface(c, p.a);
    else if (name == "ledger") cmd_ledger(c, p.ledger);
    report.exit_status = report.all_passed() && !report.result.contains("error") ? 0 : 1;
  } catch (const LoadError& e) {
    report.error = e.what();
    report.checks.push_back({"input", false, e.what()});
    report.exit_status = 2;
  } catch (const MathFailure& e) {
    report.error = e.what();
    if (report.all_passed()) report.checks.push_back({"computation", false, e.what()});
    report.exit_status = 1;
  } catch (const linkgeom::DegenerateInput& e) {
    report.error = e.what();
    report.checks.push_back({"computation", false, e.what()});
    report.exit_status = 1;
  }
  if (report.result.contains("error")) {
    report.error = report.result["error"].get<std::string>();
    report.result.erase("error");
  }
  report.inputs_digest = fnv1a_digest(c.inputs());
  return report;
}

std::string render_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["inputs_digest"] = r.inputs_digest;
  j["result"] = r.result;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["verification"] = checks;
  if (!r.error.empty()) j["error"] = r.error;
  j["status"] = status_word(r);
  j["exit_status"] = r.exit_status;
  return j.dump(2) + "\n";
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "command: " << joined(r.command) << "\n";
  os << "seed: " << r.seed << "\n";
  os << "inputs: " << r.inputs_digest << "\n";
  os << "result:\n";
  for (const auto& [k, v] : r.result.items()) text_value(os, k, v, "  ");
  os << "verification:\n";
  for (const auto& c : r.checks) os << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  if (!r.error.empty()) os << "error: " << r.error << "\n";
  os << "status: " << status_word(r) << " (exit " << r.exit_status << ")\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const FileReader& read) {
  const Report r = dispatch(args, read);
  if (!r.help.empty()) {
    out << r.help;
    return 0;
  }
  if (!r.usage_error.empty()) {
    err << r.usage_error;
    return r.exit_status;
  }
  out << (r.format == Format::Json ? render_json(r) : render_text(r));
  if (r.exit_status == 2) err << r.error << "\n";
  return r.exit_status;
}

}  // namespace spinkit::cli
