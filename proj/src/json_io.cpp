#include "vfblock/json_io.hpp"

#include "vfblock/errors.hpp"

namespace vfb {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
    throw Error(Errc::SchemaError, path + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) schema(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) schema(path + "." + key, "missing");
    return *it;
}

int int_from(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) schema(path, "expected an integer");
    return j.get<int>();
}

Json point_json(const RPoint& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

RPoint point_from(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) schema(path, "expected [x, y]");
    return {rational_from_json(j[0], path + "[0]"), rational_from_json(j[1], path + "[1]")};
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return parse_rational(j.dump());
        if (j.is_number_float()) return parse_rational(j.dump());
    } catch (const Error&) {
        schema(path, "not a rational: " + j.dump());
    }
    schema(path, "expected a rational (\"num/den\")");
}

Json to_json(const Poly2& p) {
    Json a = Json::array();
    for (const auto& [e, c] : p.terms()) a.push_back({{"i", e.first}, {"j", e.second}, {"c", to_json(c)}});
    return a;
}

Poly2 poly_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected a term list");
    Poly2 out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        const int i = int_from(member(j[k], "i", p), p + ".i");
        const int jj = int_from(member(j[k], "j", p), p + ".j");
        if (i < 0 || jj < 0) schema(p, "negative exponent");
        out += Poly2::monomial(i, jj, rational_from_json(member(j[k], "c", p), p + ".c"));
    }
    return out;
}

Json to_json(const TrigPoly2& t) {
    Json a = Json::array();
    for (const auto& [key, c] : t.terms()) {
        const std::string basis{static_cast<char>(key.wx), static_cast<char>(key.wy)};
        a.push_back({{"m", key.m}, {"n", key.n}, {"basis", basis}, {"c", to_json(c)}});
    }
    return a;
}

TrigPoly2 trig_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected a term list");
    TrigPoly2 out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        const int m = int_from(member(j[k], "m", p), p + ".m");
        const int n = int_from(member(j[k], "n", p), p + ".n");
        const Json& b = member(j[k], "basis", p);
        if (!b.is_string()) schema(p + ".basis", "expected one of cc, cs, sc, ss");
        const std::string s = b.get<std::string>();
        if (s.size() != 2 || (s[0] != 'c' && s[0] != 's') || (s[1] != 'c' && s[1] != 's'))
            schema(p + ".basis", "expected one of cc, cs, sc, ss");
        out += TrigPoly2::term(m, n, static_cast<Wave>(s[0]), static_cast<Wave>(s[1]),
                               rational_from_json(member(j[k], "c", p), p + ".c"));
    }
    return out;
}

Json to_json(const Scalar& s) {
    if (s.is_poly()) return {{"kind", "poly"}, {"terms", to_json(s.poly())}};
    return {{"kind", "trig"}, {"scale_power", s.trig().scale_power()}, {"terms", to_json(s.trig())}};
}

Json to_json(const PlanarField& x) {
    Json j{{"surface", surface_name(x.surface())}, {"smoothness", x.smoothness()}};
    if (x.is_polynomial()) {
        j["p"] = to_json(x.p().poly());
        j["q"] = to_json(x.q().poly());
    } else {
        j["p"] = to_json(x.p().trig());
        j["q"] = to_json(x.q().trig());
        if (x.p().trig().scale_power() != 0 || x.q().trig().scale_power() != 0)
            j["scale_power"] = {x.p().trig().scale_power(), x.q().trig().scale_power()};
    }
    return j;
}

PlanarField field_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) schema(path, "expected a field object");
    std::string surface = "plane";
    if (const auto it = j.find("surface"); it != j.end()) {
        if (!it->is_string()) schema(path + ".surface", "expected \"plane\" or \"torus\"");
        surface = it->get<std::string>();
    }
    int smooth = 1;
    if (const auto it = j.find("smoothness"); it != j.end()) smooth = int_from(*it, path + ".smoothness");
    if (smooth < 1) schema(path + ".smoothness", "must be at least 1");
    if (surface == "plane")
        return PlanarField::plane(poly_from_json(member(j, "p", path), path + ".p"),
                                  poly_from_json(member(j, "q", path), path + ".q"), smooth);
    if (surface == "torus")
        return PlanarField::torus(trig_from_json(member(j, "p", path), path + ".p"),
                                  trig_from_json(member(j, "q", path), path + ".q"), smooth);
    schema(path + ".surface", "expected \"plane\" or \"torus\"");
}

Json to_json(const Region& u) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>)
                return {{"type", "disk"}, {"center", point_json(s.center)}, {"r", to_json(s.r)}};
            else if constexpr (std::is_same_v<T, Annulus>)
                return {{"type", "annulus"},
                        {"center", point_json(s.center)},
                        {"r_in", to_json(s.r_in)},
                        {"r_out", to_json(s.r_out)}};
            else if constexpr (std::is_same_v<T, Rect>)
                return {{"type", "rect"},
                        {"corners", Json::array({point_json({s.box.x0, s.box.y0}), point_json({s.box.x1, s.box.y1})})}};
            else
                return {{"type", "torus"}};
        },
        u.shape());
}

Region region_from_json(const Json& j, const std::string& path) {
    const Json& t = member(j, "type", path);
    if (!t.is_string()) schema(path + ".type", "expected a string");
    const std::string type = t.get<std::string>();
    try {
        if (type == "disk")
            return Region::disk(point_from(member(j, "center", path), path + ".center"),
                                rational_from_json(member(j, "r", path), path + ".r"));
        if (type == "annulus")
            return Region::annulus(point_from(member(j, "center", path), path + ".center"),
                                   rational_from_json(member(j, "r_in", path), path + ".r_in"),
                                   rational_from_json(member(j, "r_out", path), path + ".r_out"));
        if (type == "rect") {
            const Json& c = member(j, "corners", path);
            if (!c.is_array() || c.size() != 2) schema(path + ".corners", "expected [[x0, y0], [x1, y1]]");
            const RPoint a = point_from(c[0], path + ".corners[0]");
            const RPoint b = point_from(c[1], path + ".corners[1]");
            return Region::rect(a.x, a.y, b.x, b.y);
        }
        if (type == "torus") return Region::torus();
    } catch (const Error& e) {
        if (e.code() == Errc::SchemaError) throw;
        schema(path, e.what());
    }
    schema(path + ".type", "expected disk, annulus, rect or torus");
}

Json to_json(const ZeroEnclosure& e) {
    Json a = Json::array();
    for (const RBox& b : e.boxes()) a.push_back({to_json(b.x0), to_json(b.y0), to_json(b.x1), to_json(b.y1)});
    return a;
}

Json to_json(const IndexResult& r) {
    return {{"index", r.index},
            {"margin", to_json(r.margin)},
            {"max_step", r.max_step_rotation},
            {"essential", r.essential},
            {"certified", r.certified}};
}

Json to_json(const TrackingCertificate& c) {
    const bool symbolic = c.mode == TrackingCertificate::Mode::SymbolicZero;
    Json j{{"mode", symbolic ? "symbolic" : "numeric"}, {"verdict", c.verdict}};
    if (symbolic)
        j["residual"] = "0";
    else
        j["residual"] = c.residual;
    if (symbolic && !c.verdict) j["determinant"] = to_json(c.determinant);
    return j;
}

}  // namespace vfb
