// io.hpp: JSON encodings of the library's values.
//
// Matrix:  {"n": 2, "re": [[...], ...], "im": [[...], ...]}   ("im" may be omitted)
// Measure: {"kind": "born", "rho": M}
//          {"kind": "dispersion_free", "x": [..], "y": [..], "z": [..]}
//          {"kind": "table", "entries": [{"projector": M, "p": v}, ...], "fallback": M?}
// Cone:    {"n": 2, "generators": [M, ...]}
// Frames:  {"frames": [{"projectors": [M, ...]}, ...]}
//
// Parsers throw Error(ParseError) for structural problems and the usual construction errors
// (NotHermitian, BadFrame, ...) for invalid values.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgamble/betting.hpp"
#include "qgamble/desirability.hpp"
#include "qgamble/duality.hpp"
#include "qgamble/gleason.hpp"
#include "qgamble/hermitian.hpp"
#include "qgamble/measures.hpp"

namespace qgamble::io {

using json = nlohmann::json;

json parse(std::istream& in);
json parse(const std::string& text);

json to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const json& j);

json to_json(const BlochVector& v);
BlochVector vector_from_json(const json& j);

json to_json(const ProbabilityMeasure& p);
ProbabilityMeasure measure_from_json(const json& j);

json to_json(const GambleCone& c);
GambleCone cone_from_json(const json& j);

json to_json(const Frame& f);
std::vector<Frame> frames_from_json(const json& j);

json to_json(const FeasibilityResult& r);
json to_json(const CoherenceVerdict& v);
json to_json(const IncoherenceWitness& w);

/// Either a full session or {"demo": "sure_loss", "frame3": {...}?, "state": M?}.
struct SessionFile {
    bool sure_loss_demo = false;
    Frame3 axes = Frame3::standard();
    std::optional<DensityMatrix> state;
    std::optional<BettingSession> session;
    std::vector<HermitianMatrix> offered;
    int rounds = 1;
    std::uint64_t seed = 0;
};

SessionFile session_from_json(const json& j);

} // namespace qgamble::io
