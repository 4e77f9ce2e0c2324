// eudoxus: command-line front end for cones, ratios and derivations.

#include "eudoxus/acceptance.hpp"
#include "eudoxus/eudoxus.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace eudoxus;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::int64_t max_den = kDefaultMaxDen;
  double tol = 1e-9;
  int samples = 500;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConeSpace load_cone(const std::string& path, double tol) {
  try {
    return parse_cone_spec(read_file(path), tol);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Vec parse_vec(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0') throw UsageError("bad vector entry `" + tok + "` in `" + text + "`");
    xs.push_back(v);
  }
  return Eigen::Map<Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

/// Rows separated by ';', entries by ','.
Mat parse_mat(const std::string& text) {
  std::vector<Vec> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_vec(row));
  if (rows.empty()) throw UsageError("empty matrix");
  Mat m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw UsageError("ragged matrix `" + text + "`");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

std::string fmt_vec(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << (std::abs(v(i)) < 1e-15 ? 0.0 : v(i));
  os << ")";
  return os.str();
}

std::string fmt_mat(const Mat& m) {
  std::ostringstream os;
  Eigen::IOFormat f(6, 0, ", ", "\n", "  [", "]");
  os << m.unaryExpr([](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }).format(f) << "\n";
  return os.str();
}

std::string describe(const Ratio& r) {
  std::ostringstream os;
  os << "host: " << r.host.name() << "\n";
  for (const RatioComponent& c : r.components) {
    os << "lambda " << c.lambda << " in [" << c.bracket.lo.to_string() << ", " << c.bracket.hi.to_string() << "]"
       << (c.bracket.exact ? " (hit)" : "") << " on atom " << fmt_vec(c.atom) << "\n";
  }
  if (r.non_unique) os << "consequent has a repeated eigenvalue; atoms follow the antecedent\n";
  if (r.single_block) os << "consequent is a single block\n";
  if (r.has_negative) os << "signed antecedent\n";
  return os.str();
}

Check verdict_check(const std::string& name, const Verdict& v) {
  const Status s = v.verified() ? Status::Pass : v.refuted() ? Status::Fail : Status::Unknown;
  return {name, s, v.detail};
}

// ---------------------------------------------------------------------------

void analyze(Report& rep, const Globals& g, const std::string& path) {
  const ConeSpace space = load_cone(path, g.tol);
  std::ostringstream os;
  os << "kind: " << to_string(space.kind()) << "\n";
  os << "ambient dimension: " << space.dim() << "\n";
  os << "self-dual: " << (space.is_self_dual() ? "true" : "false") << "\n";
  const RieszReport rr = is_riesz(space);
  os << "Riesz: " << (rr.riesz ? "true" : "false") << " (" << rr.reason << ")\n";
  const FacialHomogeneity fh = is_facially_homogeneous(space, 64, g.seed);
  os << "facially homogeneous: " << to_string(fh.verdict.outcome) << " (" << fh.verdict.detail << ")\n";
  const auto der = derivation_basis(space);
  os << "Der dim: " << der.size() << "\n";
  os << "self-adjoint derivations: " << selfadjoint_derivations(space).size() << "\n";
  const OrientabilityReport o = orientability(space, g.seed);
  os << "center dim: " << o.center_dim << "\n";
  os << "orientable: " << to_string(o.outcome) << " (" << o.reason << ")\n";
  rep.section("cone", os.str());

  std::vector<Mat> mats;
  for (const Derivation& d : der) mats.push_back(d.mat);
  const auto oracle = tangency_derivation_basis(space, g.seed);
  double cross = 0.0;
  for (const Mat& m : mats) cross = std::max(cross, span_residual(oracle, m));
  for (const Mat& m : oracle) cross = std::max(cross, span_residual(mats, m));
  const bool agree = oracle.size() == mats.size() && cross < 1e-8;
  rep.add("analyze.derivations_match_tangency", agree,
          "basis " + std::to_string(mats.size()) + ", oracle " + std::to_string(oracle.size()));
  rep.add("analyze.unit_is_order_unit", space.is_order_unit(space.unit()), fmt_vec(space.unit()));
  if (space.is_self_dual()) {
    std::mt19937_64 rng(g.seed);
    std::normal_distribution<double> n(0.0, 1.0);
    int bad = 0;
    for (int i = 0; i < g.samples; ++i) {
      Vec x(space.dim());
      for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = n(rng);
      JordanParts p = space.jordan_decompose(x);
      if ((p.plus - p.minus - x).norm() > g.tol * x.norm() || std::abs(p.plus.dot(p.minus)) >= g.tol * x.squaredNorm())
        ++bad;
    }
    rep.add("analyze.jordan_decomposition", bad == 0,
            std::to_string(bad) + " failures in " + std::to_string(g.samples) + " samples");
  }
}

struct RatioArgs {
  std::string host;
  std::string antecedent, consequent, antecedent2, consequent2;
};

Ratio make_ratio(const ConeSpace& space, const Globals& g, const std::string& a1, const std::string& a) {
  if (a1.empty() || a.empty()) throw UsageError("ratio needs --antecedent and --consequent");
  try {
    return ratio_from_pair(space, parse_vec(a1), parse_vec(a), g.max_den);
  } catch (const DimensionMismatch& e) {
    throw UsageError(e.what());
  }
}

void ratio_cmd(Report& rep, const Globals& g, const std::string& op, const RatioArgs& args) {
  const ConeSpace space = load_cone(args.host, g.tol);
  const Ratio r = make_ratio(space, g, args.antecedent, args.consequent);
  rep.section("ratio", describe(r));
  if (op == "make") {
    if (space.is_self_dual()) {
      const Ratio back = from_derivation(space, to_derivation(r), g.max_den);
      rep.add("ratio.derivation_round_trip", ratio_equal(back, r, g.max_den), "from_derivation(to_derivation(r)) = r");
    } else {
      rep.add({"ratio.derivation_round_trip", Status::Unknown, "host is not self-dual"});
    }
    return;
  }
  const Ratio s = make_ratio(space, g, args.antecedent2, args.consequent2);
  rep.section("second ratio", describe(s));
  if (op == "eq") {
    const EqualityVerdict v = ratio_equality(r, s, g.max_den);
    rep.section("equality", std::string("three-class: ") + (v.equal ? "equal" : "unequal") +
                                "\ntwo-class: " + (v.two_class_equal ? "equal" : "unequal") + "\n");
    rep.add({"ratio.equality_variants_agree", v.variants_agree() ? Status::Pass : Status::Unknown,
             v.variants_agree() ? "" : "variants split inside the tolerance band"});
  } else if (op == "compose") {
    const ComposeResult c = compose(r, s);
    std::string body = "derivation:\n" + fmt_mat(c.derivation.mat);
    if (c.jb_only) body += "factors do not commute: symmetrized (Jordan) product\n";
    if (c.ratio) body += describe(*c.ratio);
    rep.section("composition", body);
    if (c.jb_only)
      rep.add({"ratio.composition_is_derivation", Status::Unknown, "no ratio product; Jordan product reported"});
    else
      rep.add(verdict_check("ratio.composition_is_derivation", is_derivation(space, c.derivation.mat)));
  } else if (op == "add") {
    const Ratio sum = add(r, s);
    rep.section("sum", describe(sum));
    rep.add(verdict_check("ratio.sum_is_derivation", is_derivation(space, to_derivation(sum).mat)));
  }
}

void derivation_cmd(Report& rep, const Globals& g, const std::string& op, const std::string& host,
                    const std::string& matrix) {
  const ConeSpace space = load_cone(host, g.tol);
  if (op == "spectrum") {
    if (matrix.empty()) throw UsageError("derivation spectrum needs --matrix");
    const Mat m = parse_mat(matrix);
    if (m.rows() != space.dim() || m.cols() != space.dim())
      throw UsageError("matrix must be " + std::to_string(space.dim()) + " x " + std::to_string(space.dim()));
    const Derivation d = Derivation::of(m);
    const SpectralFaceFamily fam = spectral_faces(space, d);
    std::ostringstream os;
    for (const SpectralFaceEntry& e : fam.entries)
      os << "lambda " << e.lambda << ": face dim " << e.face.dimension() << ", cumulative dim "
         << e.cumulative.dimension() << "\n";
    rep.section("spectral faces", os.str());
    const double err = operator_norm(reconstruct_from_faces(space, fam).mat - d.mat);
    std::ostringstream det;
    det << "error " << err;
    rep.add("derivation.reconstruct_from_faces", err < g.tol, det.str());
    return;
  }
  const auto basis = selfadjoint_derivations(space);
  std::mt19937_64 rng(g.seed);
  double worst = 0.0;
  for (int i = 0; i < g.samples; ++i) {
    const Derivation d = acceptance::detail::random_selfadjoint(basis, rng);
    worst = std::max(worst, operator_norm(to_derivation(from_derivation(space, d, g.max_den)).mat - d.mat));
  }
  std::ostringstream det;
  det << "max error " << worst << " over " << g.samples << " derivations";
  rep.add("derivation.round_trip", worst < g.tol, det.str());
}

void demo_quadrature(Report& rep, std::int64_t k, int power) {
  if (k < 1 || power < 1) throw UsageError("quadrature needs --k >= 1 and --power >= 1");
  std::vector<Fraction> f;
  for (std::int64_t i = 0; i <= k; ++i) {
    Fraction x(i, k), y(1);
    for (int p = 0; p < power; ++p) y = y * x;
    f.push_back(y);
  }
  const Quadrature<Fraction> q = quadrature(f);
  const Fraction exact(1, power + 1);
  std::ostringstream os;
  os << "f(x) = x^" << power << ", k = " << k << "\n";
  os << "inscribed: " << q.lower.to_double() << "\ncircumscribed: " << q.upper.to_double() << "\n";
  os << "width: " << q.width().to_string() << "\n";
  rep.section("quadrature", os.str());
  rep.add("quadrature.brackets_area", q.lower < exact && exact < q.upper, "1/" + std::to_string(power + 1));
  rep.add("quadrature.width", q.width() == Fraction(1, k), "upper - lower = (f(1) - f(0)) / k");
}

struct ConjunctArgs {
  std::string density, volume, velocity, matter;
};

void demo_conjunct(Report& rep, ConjunctArgs a) {
  const bool any = !a.density.empty() || !a.volume.empty() || !a.velocity.empty() || !a.matter.empty();
  std::vector<std::pair<Quantity, Quantity>> pairs;
  auto q = [](const std::string& text, const char* word) {
    try {
      return Quantity{Fraction::parse(text), DimWord::parse(word, WordMode::symmetric)};
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad quantity `") + text + "`: " + e.what());
    }
  };
  if (!any) {
    pairs.push_back({q("2", "matter/vol"), q("2", "vol")});
    pairs.push_back({q("2", "matter/vol"), q("3", "vol")});
    pairs.push_back({q("2", "len/time"), q("2", "matter")});
  }
  if (!a.density.empty() || !a.volume.empty()) {
    if (a.density.empty()) a.density = "1";
    if (a.volume.empty()) a.volume = "1";
    pairs.push_back({q(a.density, "matter/vol"), q(a.volume, "vol")});
  }
  if (!a.velocity.empty() || !a.matter.empty()) {
    if (a.velocity.empty()) a.velocity = "1";
    if (a.matter.empty()) a.matter = "1";
    pairs.push_back({q(a.velocity, "len/time"), q(a.matter, "matter")});
  }
  std::ostringstream os;
  bool exact = true;
  for (const auto& [x, y] : pairs) {
    const Quantity z = conjunct(x, y);
    os << x.to_string() << " x " << y.to_string() << " = " << z.to_string() << "\n";
    exact = exact && std::get<Fraction>(z.magnitude) ==
                         std::get<Fraction>(x.magnitude) * std::get<Fraction>(y.magnitude);
  }
  rep.section("conjunct", os.str());
  rep.add("conjunct.exact_product", exact, std::to_string(pairs.size()) + " products");
}

void demo_krein(Report& rep, const Globals& g, const std::string& host) {
  const ConeSpace space = host.empty() ? ConeSpace::orthant(3) : load_cone(host, g.tol);
  const KreinSpace e(space);
  std::ostringstream ax;
  for (const AxiomResult& r : check_axioms(space, e.unit(), g.samples, g.seed))
    ax << r.axiom << ": " << (r.pass ? "holds" : "fails") << " (" << r.detail << ")\n";
  rep.section("axioms", ax.str());
  const PureStates ps = pure_states(e, 16, g.seed);
  std::ostringstream st;
  st << ps.states.size() << (ps.exact ? " pure states" : " sampled pure states") << "\n";
  for (const State& s : ps.states) st << fmt_vec(s.functional) << "\n";
  rep.section("pure states", st.str());
  if (!e.riesz()) {
    rep.add({"krein.multiplicative_states", Status::Unknown, "order is not a lattice; no canonical product"});
    return;
  }
  int bad = 0;
  for (const State& s : ps.states)
    if (!multiplicative_characterization(e, s).holds) ++bad;
  rep.add("krein.multiplicative_states", bad == 0, std::to_string(bad) + " non-multiplicative pure states");
  std::mt19937_64 rng(g.seed);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < g.samples; ++i) {
    Vec x(space.dim());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = n(rng);
    worst = std::max(worst, std::abs(gelfand_map(e, x).cwiseAbs().maxCoeff() - e.norm(x)) / std::max(1.0, x.norm()));
  }
  std::ostringstream det;
  det << "max error " << worst;
  rep.add("krein.gelfand_isometry", worst < g.tol, det.str());
}

void suite_all(Report& rep, const Globals& g) {
  acceptance::Settings s;
  s.seed = g.seed;
  s.samples = g.samples;
  s.max_den = g.max_den;
  for (Check& c : acceptance::run_all(s)) rep.add(std::move(c));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ratios on ordered vector spaces: cones, derivations and exact cuts"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every sampled check")->capture_default_str();
  app.add_option("--max-den", g.max_den, "Largest denominator in a cut bracket")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Cone tolerance and pass threshold")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--samples", g.samples, "Samples per randomized check")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write the report here instead of stdout");

  std::string spec_path;
  auto* an = app.add_subcommand("analyze", "Structural properties of a cone");
  an->add_option("spec", spec_path, "Cone spec file")->required();

  RatioArgs ra;
  auto* ratio = app.add_subcommand("ratio", "Build, compare and combine ratios");
  ratio->require_subcommand(1);
  std::string ratio_op;
  for (const char* name : {"make", "eq", "compose", "add"}) {
    auto* sub = ratio->add_subcommand(name);
    sub->add_option("--host", ra.host, "Cone spec file")->required();
    sub->add_option("--antecedent", ra.antecedent, "a' as comma-separated coordinates")->required();
    sub->add_option("--consequent", ra.consequent, "a as comma-separated coordinates")->required();
    if (std::string(name) != "make") {
      sub->add_option("--antecedent2", ra.antecedent2, "second ratio antecedent")->required();
      sub->add_option("--consequent2", ra.consequent2, "second ratio consequent")->required();
    }
    sub->callback([&ratio_op, name] { ratio_op = name; });
  }

  std::string der_op, der_host, der_matrix;
  auto* der = app.add_subcommand("derivation", "Spectral faces and round trips of derivations");
  der->require_subcommand(1);
  auto* spectrum = der->add_subcommand("spectrum");
  spectrum->add_option("--host", der_host, "Cone spec file")->required();
  spectrum->add_option("--matrix", der_matrix, "Self-adjoint derivation, rows separated by ';'")->required();
  spectrum->callback([&] { der_op = "spectrum"; });
  auto* roundtrip = der->add_subcommand("roundtrip");
  roundtrip->add_option("--host", der_host, "Cone spec file")->required();
  roundtrip->callback([&] { der_op = "roundtrip"; });

  std::string demo_op, krein_host;
  std::int64_t k = 1024;
  int power = 2;
  ConjunctArgs ca;
  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  auto* quad = demo->add_subcommand("quadrature");
  quad->add_option("--k", k, "Number of bases")->capture_default_str();
  quad->add_option("--power", power, "f(x) = x^power")->capture_default_str();
  quad->callback([&] { demo_op = "quadrature"; });
  auto* conj = demo->add_subcommand("conjunct");
  conj->add_option("--density", ca.density);
  conj->add_option("--volume", ca.volume);
  conj->add_option("--velocity", ca.velocity);
  conj->add_option("--matter", ca.matter);
  conj->callback([&] { demo_op = "conjunct"; });
  auto* krein = demo->add_subcommand("krein");
  krein->add_option("--host", krein_host, "Cone spec file (default: orthant of dimension 3)");
  krein->callback([&] { demo_op = "krein"; });

  auto* suite = app.add_subcommand("suite", "Acceptance battery");
  suite->require_subcommand(1);
  bool suite_all_flag = false;
  suite->add_subcommand("all")->callback([&] { suite_all_flag = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string title;
  for (int i = 1; i < argc; ++i) title += (i > 1 ? " " : "") + std::string(argv[i]);
  Report rep(title, g.seed);
  try {
    if (an->parsed()) {
      analyze(rep, g, spec_path);
    } else if (ratio->parsed()) {
      ratio_cmd(rep, g, ratio_op, ra);
    } else if (der->parsed()) {
      derivation_cmd(rep, g, der_op, der_host, der_matrix);
    } else if (demo->parsed()) {
      if (demo_op == "quadrature") demo_quadrature(rep, k, power);
      if (demo_op == "conjunct") demo_conjunct(rep, ca);
      if (demo_op == "krein") demo_krein(rep, g, krein_host);
    } else if (suite_all_flag) {
      suite_all(rep, g);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (g.out.empty()) {
    rep.write(std::cout);
  } else {
    std::ofstream out(g.out);
    if (!out) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return 2;
    }
    rep.write(out);
  }
  return rep.exit_code();
}
