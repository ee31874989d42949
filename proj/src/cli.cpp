#include "octa/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "octa/coloring.hpp"
#include "octa/gauge.hpp"
#include "octa/geometry.hpp"
#include "octa/io.hpp"
#include "octa/octahedral.hpp"
#include "octa/potential.hpp"

namespace octa {

namespace {

struct Options {
  std::string diagram;
  std::string rep;
  std::string coloring;
  std::string beta;
  std::string starts;
  std::string mu;
  std::string shadow;
  std::string output;
  std::string format = "text";
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int max_tries = 64;
  bool gauge = false;
  bool unit_circle = false;
  bool timings = false;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string fmt(const Mat2& g) {
  return "[[" + fmt(g.a) + ", " + fmt(g.b) + "], [" + fmt(g.c) + ", " + fmt(g.d) + "]]";
}

std::string fmt(const RowVec& v) { return "[" + fmt(v.x) + ", " + fmt(v.y) + "]"; }
std::string fmt(const ColVec& u) { return "[" + fmt(u.x) + "; " + fmt(u.y) + "]"; }

class Session {
 public:
  Session(const Options& opt, RunReport& report) : opt_(opt), report_(report) {
    ctx_ = NumericContext{}.scaled(opt.tol / 1e-9);
    diagram_ = parse_diagram(input(opt.diagram));
    comb_ = build_combinatorics(diagram_);
  }

  const Diagram& d() const { return diagram_; }
  const Combinatorics& c() const { return comb_; }
  const NumericContext& ctx() const { return ctx_; }
  RunReport& report() { return report_; }

  // Reads a file and folds it into the inputs digest.
  std::string input(const std::string& path) {
    std::string text = read_text(path);
    digest_ = fnv1a(text, digest_);
    report_.inputs_digest = hex64(digest_);
    return text;
  }

  void timed(const std::string& name, const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report_.timings.emplace_back(name, dt.count());
  }

  void write_output(const std::string& text) {
    if (opt_.output.empty()) return;
    if (opt_.output == "-") {
      report_.messages.push_back("output document follows the report");
      pending_stdout_ = text;
      return;
    }
    std::ofstream f(opt_.output, std::ios::binary);
    if (!f) throw InputError("cannot write '" + opt_.output + "'");
    f << text;
  }

  const std::string& pending_stdout() const { return pending_stdout_; }
  const std::optional<AdmissibleGauge>& last_gauge() const { return last_gauge_; }

  RepresentationInput representation() {
    if (opt_.rep.empty()) throw InputError("this command needs --rep");
    return parse_representation(input(opt_.rep), diagram_, comb_);
  }

  ShadowColoring shadow_coloring() {
    const RepresentationInput in = representation();
    ShadowColoring sc;
    timed("coloring", [&] {
      const Sl2Coloring rep = check_representation(diagram_, comb_, in.arc_matrices, ctx_);
      const DecoratedColoring dec = decorate(diagram_, comb_, rep, in.choices, ctx_);
      const ColVec seed = opt_.shadow.empty() ? ColVec::e1() : parse_column(opt_.shadow);
      sc = propagate_shadow(diagram_, comb_, dec, comb_.base_region, seed, ctx_);
    });
    Stage& st = report_.stage("coloring");
    st.residuals.emplace_back("wirtinger", wirtinger_residual(diagram_, sc.dec.rep).max_residual);
    st.residuals.emplace_back("shadow", shadow_residual(comb_, sc));
    return sc;
  }

  // Admissibility of sc, gauge-fixing when allowed.
  std::optional<ShadowColoring> admissible(const ShadowColoring& sc, bool allow_gauge) {
    const AdmissibilityReport adm = admissibility_report(comb_, sc, ctx_);
    report_.verdict("admissible", adm.admissible());
    Stage& st = report_.stage("admissibility");
    st.facts.emplace_back("violations", std::to_string(adm.violations.size()));
    for (const auto& v : adm.violations) st.facts.emplace_back("violation", describe(diagram_, v));
    if (adm.admissible()) return sc;
    if (!allow_gauge) return std::nullopt;
    AdmissibleGauge g;
    timed("gauge", [&] { g = find_admissible_gauge(diagram_, comb_, sc, opt_.seed, opt_.max_tries, ctx_); });
    Stage& gs = report_.stage("gauge");
    gs.facts.emplace_back("tries", std::to_string(g.tries));
    gs.facts.emplace_back("A", fmt(g.a.h));
    gs.facts.emplace_back("B", fmt(g.b.h));
    report_.verdict("admissible after gauge", admissibility_report(comb_, g.sc, ctx_).admissible());
    last_gauge_ = g;
    return g.sc;
  }

  OctahedralColoring associated(const ShadowColoring& sc) {
    const AssociatedColoring ac = associated_coloring(comb_, sc, ctx_);
    if (!ac.coloring) throw MathError("coloring is not admissible");
    const OctahedralCheck chk = verify_octahedral(diagram_, *ac.coloring, ctx_);
    report_.stage("octahedral").residuals.emplace_back("crossing equations", chk.max_residual);
    report_.verdict("octahedral valid", chk.pass);
    return *ac.coloring;
  }

  void shapes_stage(const OctahedralColoring& chi, const ShadowColoring* sc) {
    Stage& st = report_.stage("shapes");
    double agree = 0.0;
    for (int ci = 0; ci < diagram_.num_crossings(); ++ci) {
      const ShapeQuad q = shapes_from_coloring(diagram_, chi, ci);
      std::ostringstream line;
      line << "zN=" << fmt(q.z[0]) << " zW=" << fmt(q.z[1]) << " zS=" << fmt(q.z[2])
           << " zE=" << fmt(q.z[3]);
      st.facts.emplace_back("crossing " + std::to_string(ci), line.str());
      if (sc) {
        const ShapeQuad r = shapes_from_rep(diagram_, comb_, *sc, ci);
        for (int k = 0; k < 4; ++k) agree = std::max(agree, rel_diff(r.z[k], q.z[k]));
      }
    }
    if (sc) st.residuals.emplace_back("hopf vs b-ratio", agree);
  }

  bool pinched_stage(const DecoratedColoring& dec) {
    const PinchedReport pr = pinched_report(diagram_, dec, ctx_);
    Stage& st = report_.stage("pinched");
    for (std::size_t ci = 0; ci < pr.pinched.size(); ++ci) {
      st.facts.emplace_back("crossing " + std::to_string(ci),
                            std::string(pr.pinched[ci] ? "pinched" : "not pinched") +
                                " (sine " + fmt(pr.sine[ci]) + ")");
    }
    report_.verdict("pinched", !pr.d_smooth_candidate());
    report_.verdict("D-smooth candidate", pr.d_smooth_candidate());
    report_.verdict("arc-faithful at rho", arc_faithful_at(diagram_, dec.rep, ctx_));
    return pr.d_smooth_candidate();
  }

  double volume_stage(const OctahedralColoring& chi) {
    const double vol = volume(diagram_, chi, ctx_);
    report_.stage("volume").facts.emplace_back("volume", fmt(vol));
    return vol;
  }

  // Representation recovered from a coloring, checked against the
  // Wirtinger relations.
  void holonomy_stage(const OctahedralColoring& chi) {
    const std::vector<Mat2> g = reconstruct_holonomy(diagram_, comb_, chi, ColVec::e1(), ctx_);
    double det = 0.0;
    for (const Mat2& m : g) det = std::max(det, std::abs(m.det() - 1.0));
    Stage& st = report_.stage("holonomy");
    st.residuals.emplace_back("det", det);
    const double w = wirtinger_residual(diagram_, Sl2Coloring{g}).max_residual;
    st.residuals.emplace_back("wirtinger", w);
    report_.verdict("holonomy is a representation", w <= 10 * ctx_.relation_tol && det <= ctx_.sl2_tol);
    for (int a = 0; a < comb_.num_arcs; ++a) {
      const int s = comb_.arc_segments[a].front();
      st.facts.emplace_back("arc of segment " + std::to_string(diagram_.label(s)), fmt(g[s]));
    }
  }

 private:
  const Options& opt_;
  RunReport& report_;
  NumericContext ctx_;
  Diagram diagram_;
  Combinatorics comb_;
  std::uint64_t digest_ = 14695981039346656037ull;
  std::string pending_stdout_;
  std::optional<AdmissibleGauge> last_gauge_;
};

int fail(RunReport& r, int code, const std::string& message) {
  r.messages.push_back(message);
  r.exit_code = code;
  return code;
}

int cmd_validate(Session& s) {
  const Diagram& d = s.d();
  const Combinatorics& c = s.c();
  Stage& st = s.report().stage("diagram");
  st.facts.emplace_back("kind", d.is_closed() ? "link" : "tangle");
  st.facts.emplace_back("segments", std::to_string(d.num_segments()));
  st.facts.emplace_back("crossings", std::to_string(d.num_crossings()));
  st.facts.emplace_back("regions", std::to_string(c.num_regions));
  st.facts.emplace_back("arcs", std::to_string(c.num_arcs));
  st.facts.emplace_back("components", std::to_string(c.num_components));
  st.facts.emplace_back("base region", std::to_string(c.base_region));
  for (int k = 0; k < c.num_components; ++k) {
    std::string seq;
    for (const int seg : c.component_sequence[k]) seq += (seq.empty() ? "" : " ") + std::to_string(d.label(seg));
    st.facts.emplace_back("component " + std::to_string(k), seq);
  }
  for (int seg = 0; seg < d.num_segments(); ++seg) {
    st.facts.emplace_back("segment " + std::to_string(d.label(seg)),
                          "up " + std::to_string(c.up[seg]) + ", dn " + std::to_string(c.dn[seg]) +
                              ", arc " + std::to_string(c.arc_of[seg]));
  }
  s.report().verdict("valid", true);
  return 0;
}

int cmd_wirtinger(Session& s) {
  const WirtingerPresentation w = wirtinger_presentation(s.d(), s.c());
  Stage& st = s.report().stage("wirtinger");
  st.facts.emplace_back("generators", std::to_string(w.num_generators));
  for (int a = 0; a < s.c().num_arcs; ++a) {
    std::string segs;
    for (const int seg : s.c().arc_segments[a]) segs += (segs.empty() ? "" : " ") + std::to_string(s.d().label(seg));
    st.facts.emplace_back("w" + std::to_string(a), "segments " + segs);
  }
  for (const auto& r : w.relations) st.facts.emplace_back("crossing " + std::to_string(r.crossing), to_string(r));
  return 0;
}

int cmd_color(Session& s) {
  const ShadowColoring sc = s.shadow_coloring();
  Stage& st = s.report().stage("coloring");
  for (int seg = 0; seg < s.d().num_segments(); ++seg) {
    st.facts.emplace_back("segment " + std::to_string(s.d().label(seg)),
                          "line " + fmt(sc.dec.lines[seg].v) + ", m " + fmt(sc.dec.lines[seg].m));
  }
  for (int j = 0; j < s.c().num_regions; ++j) st.facts.emplace_back("region " + std::to_string(j), fmt(sc.u[j]));
  s.admissible(sc, false);
  return 0;
}

int cmd_octahedral(Session& s, const Options& opt) {
  const ShadowColoring sc = s.shadow_coloring();
  const auto adm = s.admissible(sc, opt.gauge);
  if (!adm) return fail(s.report(), 1, "coloring is not admissible; rerun with --gauge or use gauge-fix");
  const OctahedralColoring chi = s.associated(*adm);
  s.write_output(write_octahedral(s.d(), chi));
  Stage& st = s.report().stage("octahedral");
  for (int seg = 0; seg < s.d().num_segments(); ++seg) {
    const OctaColor& x = chi.chi[seg];
    st.facts.emplace_back("segment " + std::to_string(s.d().label(seg)),
                          "a " + fmt(x.a) + ", b " + fmt(x.b) + ", m " + fmt(x.m));
  }
  return 0;
}

int cmd_verify(Session& s) {
  const ShadowColoring sc = s.shadow_coloring();
  const auto adm = s.admissible(sc, true);
  const OctahedralColoring chi = s.associated(*adm);
  const MatchCheck m = verify_match(s.d(), s.c(), *adm, chi, s.ctx());
  s.report().stage("match").residuals.emplace_back("holonomy vs representation", m.max_residual);
  s.report().verdict("holonomy matches", m.pass);
  const bool ok = m.pass && verify_octahedral(s.d(), chi, s.ctx()).pass;
  return ok ? 0 : fail(s.report(), 1, "verification failed");
}

int cmd_shapes(Session& s, const Options& opt) {
  if (!opt.coloring.empty()) {
    const OctahedralColoring chi = parse_octahedral(s.input(opt.coloring), s.d());
    s.shapes_stage(chi, nullptr);
    return 0;
  }
  const ShadowColoring sc = s.shadow_coloring();
  const auto adm = s.admissible(sc, true);
  const OctahedralColoring chi = s.associated(*adm);
  s.shapes_stage(chi, &*adm);
  return 0;
}

int cmd_pinched(Session& s) {
  const ShadowColoring sc = s.shadow_coloring();
  if (!s.pinched_stage(sc.dec)) return fail(s.report(), 1, "diagram has pinched crossings at this representation");
  return 0;
}

int cmd_gauge_fix(Session& s, const Options& opt) {
  const ShadowColoring sc = s.shadow_coloring();
  const auto adm = s.admissible(sc, true);
  nlohmann::ordered_json moves = nlohmann::ordered_json::array();
  auto push = [&](const GaugeMove& mv) {
    auto c = [](Complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); };
    moves.push_back({{"kind", mv.kind == GaugeMove::Kind::A ? "A" : "B"},
                     {"h", {{c(mv.h.a), c(mv.h.b)}, {c(mv.h.c), c(mv.h.d)}}}});
  };
  if (s.last_gauge()) {
    push(s.last_gauge()->a);
    push(s.last_gauge()->b);
  }
  ShadowColoring fixed = *adm;
  if (opt.unit_circle) {
    NonunitGauge g;
    s.timed("unit circle", [&] { g = find_nonunit_shapes(s.d(), s.c(), fixed, opt.seed, opt.max_tries, s.ctx()); });
    push(g.move);
    Stage& st = s.report().stage("unit circle");
    st.facts.emplace_back("tries", std::to_string(g.tries));
    st.facts.emplace_back("A", fmt(g.move.h));
  }
  s.write_output(moves.dump(2) + "\n");
  return 0;
}

int cmd_potential(Session& s, const Options& opt) {
  if (opt.beta.empty()) throw InputError("potential needs --beta");
  const std::vector<Complex> mu = parse_mu_list(opt.mu.empty() ? "0" : opt.mu, s.c().num_components);
  const std::vector<Complex> beta = parse_beta(s.input(opt.beta), s.d());
  const PotentialProblem p(s.d(), s.c(), mu);
  Stage& st = s.report().stage("potential");
  st.facts.emplace_back("value", fmt(potential_value(p, beta)));
  const bool analytic = p.integer_distance(beta) > s.ctx().integer_gate;
  s.report().verdict("analytic point", analytic);
  if (!analytic) return fail(s.report(), 1, "non-analytic point: a dilogarithm argument is an integer");
  const std::vector<Complex> grad = potential_gradient(p, beta, s.ctx());
  const std::vector<Complex> eqs = segment_equations(p, beta);
  double res = 0.0;
  for (int seg = 0; seg < s.d().num_segments(); ++seg) {
    st.facts.emplace_back("dPhi/dbeta " + std::to_string(s.d().label(seg)), fmt(grad[seg]));
    res = std::max(res, std::abs(eqs[seg] - 1.0));
  }
  st.residuals.emplace_back("segment equations", res);
  return 0;
}

int cmd_solve(Session& s, const Options& opt) {
  if (!s.d().is_closed()) throw InputError("solve needs a closed diagram");
  MultiStartOptions ms;
  if (!opt.starts.empty()) ms.extra_starts = parse_starts(s.input(opt.starts), s.d());
  if (!opt.mu.empty()) {
    const PotentialProblem p(s.d(), s.c(), parse_mu_list(opt.mu, s.c().num_components));
    std::vector<CriticalPoint> pts;
    s.timed("solve", [&] { pts = multi_start_solve(p, opt.seed, ms, s.ctx()); });
    Stage& st = s.report().stage("solve");
    st.facts.emplace_back("critical points", std::to_string(pts.size()));
    double best = -1.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::string desc = "residual " + fmt(pts[k].residual);
      try {
        const OctahedralColoring chi = coloring_from_critical(p, pts[k], opt.seed, opt.max_tries, s.ctx());
        const double vol = volume(s.d(), chi, s.ctx());
        desc += ", volume " + fmt(vol);
        if (vol > best) {
          best = vol;
          s.write_output(write_octahedral(s.d(), chi));
        }
      } catch (const MathError& e) {
        desc += std::string(", no coloring: ") + e.what();
      }
      st.facts.emplace_back("point " + std::to_string(k), desc);
    }
    return pts.empty() ? fail(s.report(), 1, "no critical point found") : 0;
  }
  std::optional<GeometricSolution> sol;
  s.timed("solve", [&] { sol = find_geometric_solution(s.d(), s.c(), opt.seed, ms, s.ctx()); });
  if (!sol) {
    s.report().verdict("geometric solution", false);
    return fail(s.report(), 1, "no critical point with positive volume at mu = 0 or 1/2");
  }
  s.report().verdict("geometric solution", true);
  Stage& st = s.report().stage("solve");
  st.facts.emplace_back("mu", fmt(sol->mu));
  st.facts.emplace_back("critical points", std::to_string(sol->critical_points));
  st.residuals.emplace_back("segment equations", sol->point.residual);
  const OctahedralCheck chk = verify_octahedral(s.d(), sol->coloring, s.ctx());
  s.report().stage("octahedral").residuals.emplace_back("crossing equations", chk.max_residual);
  s.report().verdict("octahedral valid", chk.pass);
  s.holonomy_stage(sol->coloring);
  s.volume_stage(sol->coloring);
  s.write_output(write_octahedral(s.d(), sol->coloring));
  return 0;
}

int cmd_volume(Session& s, const Options& opt) {
  if (opt.coloring.empty()) throw InputError("volume needs --coloring");
  const OctahedralColoring chi = parse_octahedral(s.input(opt.coloring), s.d());
  const OctahedralCheck chk = verify_octahedral(s.d(), chi, s.ctx());
  s.report().stage("octahedral").residuals.emplace_back("crossing equations", chk.max_residual);
  s.report().verdict("octahedral valid", chk.pass);
  if (!chk.pass) return fail(s.report(), 1, "not an octahedral coloring");
  s.volume_stage(chi);
  return 0;
}

int cmd_report(Session& s, const Options& opt) {
  cmd_validate(s);
  if (!opt.rep.empty()) {
    const ShadowColoring sc = s.shadow_coloring();
    s.pinched_stage(sc.dec);
    const auto adm = s.admissible(sc, true);
    const OctahedralColoring chi = s.associated(*adm);
    const MatchCheck m = verify_match(s.d(), s.c(), *adm, chi, s.ctx());
    s.report().stage("match").residuals.emplace_back("holonomy vs representation", m.max_residual);
    s.report().verdict("holonomy matches", m.pass);
    s.shapes_stage(chi, &*adm);
    if (pinched_report(s.d(), sc.dec, s.ctx()).d_smooth_candidate()) s.volume_stage(chi);
    s.write_output(write_octahedral(s.d(), chi));
    return m.pass ? 0 : fail(s.report(), 1, "verification failed");
  }
  if (s.d().is_closed() && s.d().num_crossings() > 0) return cmd_solve(s, opt);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Octahedral coordinates of knot and tangle diagrams", "octa"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
  app.add_option("--tol", opt.tol, "relation tolerance; other tolerances scale with it")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--max-tries", opt.max_tries, "gauge and recovery attempts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", opt.output, "write the command's document here ('-' for stdout)");
  app.add_flag("--timings", opt.timings, "include timings in the report");

  struct Sub {
    const char* name;
    const char* help;
    bool rep, coloring, beta, mu, starts, shadow, gauge, unit;
  };
  const std::vector<Sub> subs{
      {"validate", "check a diagram and list its combinatorics", 0, 0, 0, 0, 0, 0, 0, 0},
      {"wirtinger", "print the Wirtinger presentation", 0, 0, 0, 0, 0, 0, 0, 0},
      {"color", "decorated shadow coloring of a representation", 1, 0, 0, 0, 0, 1, 0, 0},
      {"octahedral", "associated octahedral coloring", 1, 0, 0, 0, 0, 1, 1, 0},
      {"verify", "check that the holonomy reproduces the representation", 1, 0, 0, 0, 0, 1, 0, 0},
      {"shapes", "shape parameters per crossing", 1, 1, 0, 0, 0, 1, 0, 0},
      {"pinched", "pinched crossings and arc-faithfulness", 1, 0, 0, 0, 0, 1, 0, 0},
      {"gauge-fix", "find gauge moves to admissibility", 1, 0, 0, 0, 0, 1, 0, 1},
      {"potential", "potential value, gradient and segment equations", 0, 0, 1, 1, 0, 0, 0, 0},
      {"solve", "critical points of the potential", 0, 0, 0, 1, 1, 0, 0, 0},
      {"volume", "hyperbolic volume of an octahedral coloring", 0, 1, 0, 0, 0, 0, 0, 0},
      {"report", "full pipeline report", 1, 0, 0, 0, 1, 1, 0, 0},
  };
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->fallthrough();
    cmd->add_option("diagram", opt.diagram, "diagram file ('-' for stdin)")->required();
    if (sub.rep) cmd->add_option("--rep", opt.rep, "representation file");
    if (sub.coloring) cmd->add_option("--coloring", opt.coloring, "octahedral coloring file");
    if (sub.beta) cmd->add_option("--beta", opt.beta, "beta file");
    if (sub.mu) cmd->add_option("--mu", opt.mu, "log-meridians, comma separated re or re:im");
    if (sub.starts) cmd->add_option("--starts", opt.starts, "extra Newton starts");
    if (sub.shadow) cmd->add_option("--shadow", opt.shadow, "base-region shadow re1,im1,re2,im2");
    if (sub.gauge) cmd->add_flag("--gauge", opt.gauge, "gauge-fix inadmissible colorings");
    if (sub.unit) cmd->add_flag("--unit-circle", opt.unit_circle, "also move shapes off the unit circle");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "octa: " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunReport report;
  report.command = command;
  report.seed = opt.seed;
  int code = 0;
  std::string trailing;
  try {
    Session s(opt, report);
    if (command == "validate") code = cmd_validate(s);
    else if (command == "wirtinger") code = cmd_wirtinger(s);
    else if (command == "color") code = cmd_color(s);
    else if (command == "octahedral") code = cmd_octahedral(s, opt);
    else if (command == "verify") code = cmd_verify(s);
    else if (command == "shapes") code = cmd_shapes(s, opt);
    else if (command == "pinched") code = cmd_pinched(s);
    else if (command == "gauge-fix") code = cmd_gauge_fix(s, opt);
    else if (command == "potential") code = cmd_potential(s, opt);
    else if (command == "solve") code = cmd_solve(s, opt);
    else if (command == "volume") code = cmd_volume(s, opt);
    else code = cmd_report(s, opt);
    trailing = s.pending_stdout();
  } catch (const InputError& e) {
    err << "octa " << command << ": input error: " << e.what() << "\n";
    code = fail(report, 2, std::string("input error: ") + e.what());
  } catch (const MathError& e) {
    err << "octa " << command << ": " << e.what() << "\n";
    code = fail(report, 1, e.what());
  }
  report.exit_code = code;
  out << emit_report(report, opt.format == "json" ? ReportFormat::Json : ReportFormat::Text,
                     opt.timings);
  out << trailing;
  return code;
}

}  // namespace octa
