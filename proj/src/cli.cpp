#include "qgamble/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qgamble/betting.hpp"
#include "qgamble/duality.hpp"
#include "qgamble/gleason.hpp"
#include "qgamble/io.hpp"

namespace qgamble {

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kNegative = 2, kUndecided = 3 };

struct Options {
    std::string input;
    std::string frames;
    std::string out = "-";
    std::uint64_t seed = 0;
    double tol = 0.0;  // 0 = command default
    int samples = 1000;
    long max_iter = kMaxIterations;
    int rounds = 0;    // 0 = session default
};

io::json read_json(const std::string& path, std::istream& in) {
    if (path == "-") return io::parse(in);
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return io::parse(f);
}

// Writes to `out` for "-", otherwise to the named file.
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
    if (path == "-") {
        fn(out);
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
    fn(f);
}

void emit_json(const Options& o, std::ostream& out, const io::json& j) {
    emit(o.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

int check_coherence(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto p = io::measure_from_json(read_json(o.input, in));
    CoherenceConfig cfg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    if (o.tol > 0.0) cfg.tol = o.tol;
    const auto v = check_measure_coherence(p, cfg);
    emit_json(o, out, io::to_json(v));
    if (const auto* c = std::get_if<Coherent>(&v)) {
        err << "coherent: " << c->checked << " projectors agree with the fitted density within "
            << c->max_disagreement << "\n";
        return kOk;
    }
    if (const auto* i = std::get_if<Incoherent>(&v)) {
        err << "incoherent: " << i->witness.gambles.size() << " acceptable gambles sum to a "
            << to_string(i->witness.sum_class) << " gamble with E_p = " << i->witness.sum_expectation << "\n";
        return kNegative;
    }
    err << "inconclusive: " << std::get<CoherenceUndecided>(v).reason << "\n";
    return kUndecided;
}

int find_density(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto cone = io::cone_from_json(read_json(o.input, in));
    const auto r = find_representing_density(cone, o.tol > 0.0 ? o.tol : kFeasibilityTol, o.max_iter);
    emit_json(o, out, io::to_json(r));
    if (std::holds_alternative<Feasible>(r)) {
        err << "feasible\n";
        return kOk;
    }
    if (const auto* i = std::get_if<Infeasible>(&r)) {
        err << "infeasible: the generators combine to a matrix with max eigenvalue "
            << i->certificate.max_eigenvalue << "\n";
        return kNegative;
    }
    err << "inconclusive after " << std::get<FeasibilityUndecided>(r).iterations << " iterations\n";
    return kUndecided;
}

int reconstruct(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto p = io::measure_from_json(read_json(o.input, in));
    if (o.frames.empty() && p.dim() == 2) {
        const auto r = reconstruct_density_2d(p);
        if (const auto* rho = std::get_if<DensityMatrix>(&r)) {
            emit_json(o, out, io::json{{"status", "representable"}, {"rho", io::to_json(rho->matrix())},
                                       {"bloch", io::to_json(rho->bloch())}});
            return kOk;
        }
        const auto& nr = std::get<NonRepresentable>(r);
        emit_json(o, out, io::json{{"status", "non_representable"}, {"bloch_norm", nr.bloch_norm},
                                   {"r", io::to_json(nr.r)}});
        err << "non-representable: Bloch vector has norm " << nr.bloch_norm << "\n";
        return kNegative;
    }
    std::vector<Frame> frames = o.frames.empty() ? tomography_frames(p.dim(), o.seed)
                                                 : io::frames_from_json(read_json(o.frames, in));
    const auto r = reconstruct_density_nd(p, frames);
    emit_json(o, out, io::json{{"status", "representable"}, {"rho", io::to_json(r.rho.matrix())},
                               {"residual", r.residual}});
    return kOk;
}

int simulate(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    auto s = io::session_from_json(read_json(o.input, in));
    const int rounds = o.rounds > 0 ? o.rounds : s.rounds;
    const std::uint64_t seed = o.seed != 0 ? o.seed : s.seed;
    WealthTrajectory t;
    if (s.sure_loss_demo) {
        t = sure_loss_demo(s.axes, rounds, seed, s.state);
    } else {
        s.session->rounds = rounds;
        s.session->seed = seed;
        t = run_session(*s.session, s.offered);
    }
    emit(o.out, out, [&](std::ostream& os) { write_csv(os, t); });
    err << "final wealth: " << std::setprecision(17) << t.final_wealth() << "\n";
    return kOk;
}

// --------------------------- paper-example ----------------------------------

struct Check {
    std::ostream& os;
    bool ok = true;
    void operator()(const std::string& what, double got, double want) {
        const bool pass = std::abs(got - want) <= 1e-12;
        ok = ok && pass;
        os << (pass ? "  ok    " : "  FAIL  ") << what << " = " << got << " (expected " << want << ")\n";
    }
    void matrix(const std::string& what, const HermitianMatrix& got, const CMatrix& want) {
        const double d = (got.matrix() - want).cwiseAbs().maxCoeff();
        const bool pass = d <= 1e-12;
        ok = ok && pass;
        os << (pass ? "  ok    " : "  FAIL  ") << what << " matches, max deviation " << d << "\n";
    }
};

void print_matrix(std::ostream& os, const char* name, const HermitianMatrix& m) {
    os << name << " =\n";
    for (Index r = 0; r < m.dim(); ++r) {
        os << "    ";
        for (Index c = 0; c < m.dim(); ++c) {
            const Complex z = m(r, c);
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ")
                 << std::abs(z.imag()) << "i";
            os << std::setw(26) << cell.str();
        }
        os << "\n";
    }
}

int paper_example(const Options& o, std::ostream& out, std::ostream& err) {
    std::ostringstream rep;
    rep << std::setprecision(15);
    Check check{rep};

    const Frame3 axes = Frame3::standard();
    const auto p = ProbabilityMeasure::dispersion_free(axes);
    const auto w = dispersion_free_witness(axes, kExampleA, kExampleLambda1, kExampleLambda2);
    const HermitianMatrix& g = w.gambles[0];
    const HermitianMatrix& h = w.gambles[1];
    const HermitianMatrix& f = w.sum;

    const double r2 = std::sqrt(2.0);
    CMatrix g_ref(2, 2), h_ref(2, 2), f_ref(2, 2);
    g_ref << -0.25, Complex(1.25, -1.25 * r2), Complex(1.25, 1.25 * r2), -2.75;
    h_ref << -2.75, Complex(1.25, 1.25 * r2), Complex(1.25, -1.25 * r2), -0.25;
    f_ref << -3.0, 2.5, 2.5, -3.0;

    rep << "Dispersion-free measure on x = (1,0,0), y = (0,1,0), z = (0,0,1)\n";
    rep << "lambda1 = " << kExampleLambda1 << ", lambda2 = " << kExampleLambda2
        << ", g = (1/2, 1/sqrt2, 1/2), h = (1/2, -1/sqrt2, -1/2)\n\n";
    print_matrix(rep, "G", g);
    print_matrix(rep, "H", h);
    print_matrix(rep, "F = G + H", f);
    rep << "\n";
    check.matrix("G", g, g_ref);
    check.matrix("H", h, h_ref);
    check.matrix("F", f, f_ref);

    const auto dec = spectral_decompose(f);
    check("number of eigenvalues of F", static_cast<double>(dec.eigenvalues.size()), 2.0);
    if (dec.eigenvalues.size() == 2) {
        check("F eigenvalue rho2", dec.eigenvalues[0], -5.5);
        check("F eigenvalue rho1", dec.eigenvalues[1], -0.5);
        const BlochVector fv = bloch_from_projector(dec.projectors[1]);
        check("f_x", fv.x(), 1.0);
        check("f_y", fv.y(), 0.0);
        check("f_z", fv.z(), 0.0);
    }
    check("E_p(G)", expectation(p, g).value, 1.0);
    check("E_p(H)", expectation(p, h).value, 1.0);
    check("E_p(F)", expectation(p, f).value, -0.5);

    const auto verdict = check_measure_coherence(p, CoherenceConfig{0, o.seed, kDisagreementTol, kRefutationEpsilon});
    const bool incoherent = std::holds_alternative<Incoherent>(verdict) &&
                            verify_witness(p, std::get<Incoherent>(verdict).witness);
    check.ok = check.ok && incoherent;
    rep << (incoherent ? "  ok    " : "  FAIL  ") << "verdict: "
        << (incoherent ? "incoherent (G and H are acceptable, G + H is a sure loss)" : "not incoherent") << "\n";

    const auto fd = find_representing_density(GambleCone(2, {g, h}));
    const auto* cert = std::get_if<Infeasible>(&fd);
    const bool dutch = cert && verify_certificate(cert->certificate, GambleCone(2, {g, h}));
    check.ok = check.ok && dutch;
    rep << (dutch ? "  ok    " : "  FAIL  ") << "no density represents {G, H}";
    if (cert) rep << "; Dutch book weights (" << cert->certificate.weights[0] << ", " << cert->certificate.weights[1] << ")";
    rep << "\n";

    emit(o.out, out, [&](std::ostream& os) { os << rep.str(); });
    if (!check.ok) {
        err << "paper-example: reproduced values deviate from the reference\n";
        return kFailure;
    }
    return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum gambles: coherence checks, densities, Dutch books and betting simulations", "qgamble"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
        c->add_option("--tol", o.tol, "tolerance override (command default when omitted)");
        c->add_option("--out", o.out, "output path, - for stdout")->capture_default_str();
    };

    auto* coh = app.add_subcommand("check-coherence", "coherence verdict for a measure file");
    coh->add_option("measure", o.input, "measure JSON, - for stdin")->required();
    coh->add_option("--samples", o.samples, "random projectors compared")->capture_default_str();
    common(coh);

    auto* fd = app.add_subcommand("find-density", "density matrix representing a gamble cone");
    fd->add_option("cone", o.input, "cone JSON, - for stdin")->required();
    fd->add_option("--max-iter", o.max_iter, "iteration cap")->capture_default_str();
    common(fd);

    auto* rc = app.add_subcommand("reconstruct", "density matrix from measure values");
    rc->add_option("measure", o.input, "measure JSON, - for stdin")->required();
    rc->add_option("--frames", o.frames, "frames JSON (default: Bloch axes for n = 2, seeded random frames otherwise)");
    common(rc);

    auto* sim = app.add_subcommand("simulate", "betting session, CSV trajectory");
    sim->add_option("session", o.input, "session JSON, - for stdin")->required();
    sim->add_option("--rounds", o.rounds, "override the session's round count");
    common(sim);

    auto* ex = app.add_subcommand("paper-example", "reproduce the two-gamble sure-loss example");
    common(ex);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    try {
        if (*coh) return check_coherence(o, in, out, err);
        if (*fd) return find_density(o, in, out, err);
        if (*rc) return reconstruct(o, in, out, err);
        if (*sim) return simulate(o, in, out, err);
        return paper_example(o, out, err);
    } catch (const Error& e) {
        err << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kFailure;
}

} // namespace qgamble
