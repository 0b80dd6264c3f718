#include "qgamble/io.hpp"

#include <istream>
#include <sstream>

namespace qgamble::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    return j.get<double>();
}

template <class T>
T integer(const json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
    return j.get<T>();
}

std::vector<std::vector<double>> grid(const json& j, Index n, const char* what) {
    if (!j.is_array() || static_cast<Index>(j.size()) != n)
        fail(std::string(what) + " must have " + std::to_string(n) + " rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<Index>(row.size()) != n)
            fail(std::string(what) + " rows must have " + std::to_string(n) + " entries");
        std::vector<double> r;
        for (const auto& x : row) r.push_back(number(x, what));
        out.push_back(std::move(r));
    }
    return out;
}

json array_of(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        out.push_back(std::move(row));
    }
    return out;
}

json axes_json(const Frame3& f) {
    return json{{"x", to_json(f.x)}, {"y", to_json(f.y)}, {"z", to_json(f.z)}};
}

Frame3 axes_from_json(const json& j) {
    return Frame3::make(vector_from_json(field(j, "x")), vector_from_json(field(j, "y")),
                        vector_from_json(field(j, "z")));
}

} // namespace

json parse(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

json parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

json to_json(const HermitianMatrix& m) {
    return json{{"n", m.dim()}, {"re", array_of(m.matrix().real())}, {"im", array_of(m.matrix().imag())}};
}

HermitianMatrix matrix_from_json(const json& j) {
    const auto n = integer<Index>(field(j, "n"), "n");
    if (n < 1) fail("n must be >= 1");
    const auto re = grid(field(j, "re"), n, "re");
    std::vector<std::vector<double>> im(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    if (j.contains("im")) im = grid(j.at("im"), n, "im");
    std::vector<std::vector<Complex>> g(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) g[r].emplace_back(re[r][c], im[r][c]);
    return make_hermitian(g);
}

json to_json(const BlochVector& v) { return json::array({v.c[0], v.c[1], v.c[2]}); }

BlochVector vector_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) fail("a 3-vector must be an array of 3 numbers");
    return BlochVector{{number(j[0], "vector entry"), number(j[1], "vector entry"), number(j[2], "vector entry")}};
}

json to_json(const ProbabilityMeasure& p) {
    if (const auto* b = std::get_if<ProbabilityMeasure::Born>(&p.kind()))
        return json{{"kind", "born"}, {"rho", to_json(b->rho.matrix())}};
    if (const auto* d = std::get_if<ProbabilityMeasure::DispersionFree>(&p.kind())) {
        json out = axes_json(d->axes);
        out["kind"] = "dispersion_free";
        return out;
    }
    const auto& t = std::get<ProbabilityMeasure::Table>(p.kind());
    json entries = json::array();
    for (const auto& e : t.entries) entries.push_back(json{{"projector", to_json(e.projector)}, {"p", e.value}});
    json out{{"kind", "table"}, {"n", t.dim}, {"entries", std::move(entries)}};
    if (t.fallback) out["fallback"] = to_json(t.fallback->matrix());
    return out;
}

ProbabilityMeasure measure_from_json(const json& j) {
    const auto& kind = field(j, "kind");
    if (!kind.is_string()) fail("'kind' must be a string");
    const auto k = kind.get<std::string>();
    if (k == "born") return ProbabilityMeasure::born(DensityMatrix::from_hermitian(matrix_from_json(field(j, "rho"))));
    if (k == "dispersion_free") return ProbabilityMeasure::dispersion_free(axes_from_json(j));
    if (k != "table") fail("unknown measure kind '" + k + "'");

    const auto& entries = field(j, "entries");
    if (!entries.is_array()) fail("'entries' must be an array");
    std::vector<TableEntry> out;
    for (const auto& e : entries) out.push_back({matrix_from_json(field(e, "projector")), number(field(e, "p"), "p")});
    std::optional<DensityMatrix> fallback;
    if (j.contains("fallback")) fallback = DensityMatrix::from_hermitian(matrix_from_json(j.at("fallback")));
    Index n = 0;
    if (j.contains("n")) n = integer<Index>(j.at("n"), "n");
    else if (!out.empty()) n = out.front().projector.dim();
    else if (fallback) n = fallback->dim();
    else fail("a table needs 'n', an entry or a fallback");
    return ProbabilityMeasure::table(n, std::move(out), std::move(fallback));
}

json to_json(const GambleCone& c) {
    json gens = json::array();
    for (const auto& g : c.generators()) gens.push_back(to_json(g));
    return json{{"n", c.dim()}, {"generators", std::move(gens)}};
}

GambleCone cone_from_json(const json& j) {
    const auto n = integer<Index>(field(j, "n"), "n");
    const auto& gens = field(j, "generators");
    if (!gens.is_array()) fail("'generators' must be an array");
    std::vector<HermitianMatrix> out;
    for (const auto& g : gens) out.push_back(matrix_from_json(g));
    return GambleCone(n, std::move(out));
}

json to_json(const Frame& f) {
    json ps = json::array();
    for (const auto& p : f.projectors()) ps.push_back(to_json(p));
    return json{{"projectors", std::move(ps)}};
}

std::vector<Frame> frames_from_json(const json& j) {
    const auto& frames = field(j, "frames");
    if (!frames.is_array()) fail("'frames' must be an array");
    std::vector<Frame> out;
    for (const auto& f : frames) {
        const auto& ps = field(f, "projectors");
        if (!ps.is_array()) fail("'projectors' must be an array");
        std::vector<HermitianMatrix> proj;
        for (const auto& p : ps) proj.push_back(matrix_from_json(p));
        out.push_back(Frame::from_projectors(std::move(proj)));
    }
    return out;
}

json to_json(const FeasibilityResult& r) {
    if (const auto* f = std::get_if<Feasible>(&r))
        return json{{"status", "feasible"}, {"rho", to_json(f->rho.matrix())},
                    {"max_violation", f->max_violation}, {"iterations", f->iterations}};
    if (const auto* i = std::get_if<Infeasible>(&r))
        return json{{"status", "infeasible"}, {"weights", i->certificate.weights},
                    {"combined", to_json(i->certificate.combined)}, {"max_eig", i->certificate.max_eigenvalue}};
    const auto& u = std::get<FeasibilityUndecided>(r);
    return json{{"status", "inconclusive"}, {"max_violation", u.max_violation}, {"iterations", u.iterations}};
}

json to_json(const IncoherenceWitness& w) {
    json gambles = json::array();
    for (const auto& g : w.gambles) gambles.push_back(to_json(g));
    return json{{"gambles", std::move(gambles)}, {"expectations", w.expectations},
                {"sum", to_json(w.sum)}, {"sum_max_eig", w.sum_max_eigenvalue},
                {"sum_expectation", w.sum_expectation}, {"sum_class", to_string(w.sum_class)},
                {"kind", to_string(w.kind)}};
}

json to_json(const CoherenceVerdict& v) {
    if (const auto* c = std::get_if<Coherent>(&v))
        return json{{"status", "coherent"}, {"rho", to_json(c->rho.matrix())},
                    {"max_disagreement", c->max_disagreement}, {"checked", c->checked}};
    if (const auto* i = std::get_if<Incoherent>(&v)) {
        json out{{"status", "incoherent"}, {"witness", to_json(i->witness)}};
        if (i->refutation) {
            const auto& r = *i->refutation;
            out["refutation"] = json{{"gamble", to_json(r.gamble)}, {"projector", to_json(r.projector)},
                                     {"construction", r.construction}, {"mirrored", r.mirrored},
                                     {"expectation", r.expectation}, {"trace_value", r.trace_value}};
        }
        if (i->candidate) out["candidate_rho"] = to_json(i->candidate->matrix());
        return out;
    }
    return json{{"status", "inconclusive"}, {"reason", std::get<CoherenceUndecided>(v).reason}};
}

SessionFile session_from_json(const json& j) {
    SessionFile s;
    if (!j.is_object()) fail("a session must be a JSON object");
    if (j.contains("rounds")) s.rounds = integer<int>(j.at("rounds"), "rounds");
    if (j.contains("seed")) s.seed = integer<std::uint64_t>(j.at("seed"), "seed");
    if (j.contains("state")) s.state = DensityMatrix::from_hermitian(matrix_from_json(j.at("state")));

    if (j.contains("demo")) {
        if (j.at("demo") != "sure_loss") fail("the only demo is 'sure_loss'");
        s.sure_loss_demo = true;
        if (j.contains("frame3")) s.axes = axes_from_json(j.at("frame3"));
        return s;
    }

    if (!s.state) fail("missing field 'state'");
    const auto& fr = field(j, "frame");
    if (!fr.is_array()) fail("'frame' must be an array of projectors");
    std::vector<HermitianMatrix> proj;
    for (const auto& p : fr) proj.push_back(matrix_from_json(p));
    Frame frame = Frame::from_projectors(std::move(proj));

    const auto& st = field(j, "strategy");
    std::optional<Strategy> strategy;
    if (st.contains("measure")) strategy = measure_from_json(st.at("measure"));
    else if (st.contains("cone")) strategy = cone_from_json(st.at("cone"));
    else fail("'strategy' needs a 'measure' or a 'cone'");

    const auto& off = field(j, "offered");
    if (!off.is_array()) fail("'offered' must be an array");
    for (const auto& g : off) s.offered.push_back(matrix_from_json(g));

    s.session = BettingSession{*s.state, std::move(frame), std::move(*strategy), s.seed, s.rounds};
    return s;
}

} // namespace qgamble::io
