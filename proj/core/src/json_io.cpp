#include "polyinv/json_io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace polyinv {

namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_extended(const json& j, const char* where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw std::invalid_argument(std::string(where) + ": expected a number, \"inf\" or \"-inf\"");
}

Eigen::VectorXd parse_vector(const json& j, const char* where, bool extended) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument(std::string(where) + ": expected a nonempty array");
    }
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (extended) {
            v(static_cast<Eigen::Index>(i)) = parse_extended(j[i], where);
        } else if (j[i].is_number()) {
            v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
        } else {
            throw std::invalid_argument(std::string(where) + ": expected a number");
        }
    }
    return v;
}

Box parse_box_json(const json& j) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) {
        throw std::invalid_argument("set spec: box needs \"lo\" and \"hi\"");
    }
    Eigen::VectorXd lo = parse_vector(j["lo"], "box lo", true);
    Eigen::VectorXd hi = parse_vector(j["hi"], "box hi", true);
    if (lo.size() != hi.size()) {
        throw std::invalid_argument("set spec: box lo/hi lengths differ");
    }
    return {std::move(lo), std::move(hi)};
}

Polyhedron parse_polyhedron_json(const json& j) {
    if (!j.is_object() || !j.contains("C") || !j.contains("d")) {
        throw std::invalid_argument("set spec: polyhedron needs \"C\" and \"d\"");
    }
    const json& jc = j["C"];
    const json& jd = j["d"];
    if (!jc.is_array() || !jd.is_array() || jc.size() != jd.size()) {
        throw std::invalid_argument("set spec: polyhedron C/d shapes are inconsistent");
    }
    if (jc.empty()) throw std::invalid_argument("set spec: polyhedron needs at least one row");
    Polyhedron p(static_cast<int>(jc[0].size()));
    for (std::size_t i = 0; i < jc.size(); ++i) {
        Eigen::VectorXd row = parse_vector(jc[i], "polyhedron C row", false);
        if (!jd[i].is_number()) {
            throw std::invalid_argument("set spec: polyhedron d entries must be numbers");
        }
        p.add({std::move(row), jd[i].get<double>()});
    }
    return p;
}

void parse_set_json(const json& j, std::vector<Polyhedron>& parts) {
    if (!j.is_object() || j.size() != 1) {
        throw std::invalid_argument(
            "set spec: expected exactly one of box/polyhedron/halfspace/union");
    }
    if (j.contains("box")) {
        parts.push_back(to_polyhedron(parse_box_json(j["box"])));
    } else if (j.contains("polyhedron")) {
        parts.push_back(parse_polyhedron_json(j["polyhedron"]));
    } else if (j.contains("halfspace")) {
        const json& h = j["halfspace"];
        if (!h.is_object() || !h.contains("c") || !h.contains("d") || !h["d"].is_number()) {
            throw std::invalid_argument("set spec: halfspace needs \"c\" and numeric \"d\"");
        }
        Eigen::VectorXd c = parse_vector(h["c"], "halfspace c", false);
        Polyhedron p(static_cast<int>(c.size()));
        p.add({std::move(c), h["d"].get<double>()});
        parts.push_back(std::move(p));
    } else if (j.contains("union")) {
        if (!j["union"].is_array()) {
            throw std::invalid_argument("set spec: union must be an array");
        }
        for (const json& member : j["union"]) parse_set_json(member, parts);
    } else {
        throw std::invalid_argument("set spec: unknown set kind");
    }
}

}  // namespace

PolyUnion parse_set_spec(const std::string& text, int expected_dim) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("set spec: malformed JSON: ") + e.what());
    }
    std::vector<Polyhedron> parts;
    parse_set_json(j, parts);
    int dim = expected_dim;
    if (dim < 0) {
        if (parts.empty()) {
            throw std::invalid_argument("set spec: cannot infer dimension of an empty union");
        }
        dim = parts.front().dim;
    }
    for (const Polyhedron& p : parts) {
        if (p.dim != dim) {
            std::ostringstream os;
            os << "set spec: expected dimension " << dim << ", got " << p.dim;
            throw std::invalid_argument(os.str());
        }
    }
    return {dim, std::move(parts)};
}

Box parse_box_spec(const std::string& text, int expected_dim) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("box spec: malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("box")) {
        throw std::invalid_argument("box spec: expected {\"box\": {...}}");
    }
    Box b = parse_box_json(j["box"]);
    if (expected_dim >= 0 && b.dim() != expected_dim) {
        std::ostringstream os;
        os << "box spec: expected dimension " << expected_dim << ", got " << b.dim();
        throw std::invalid_argument(os.str());
    }
    return b;
}

Box parse_box_shorthand(const std::string& text) {
    std::vector<double> lo, hi;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_endpoint = [&]() -> double {
        skip_ws();
        if (text.compare(pos, 4, "-inf") == 0) {
            pos += 4;
            return -kInf;
        }
        if (text.compare(pos, 3, "inf") == 0) {
            pos += 3;
            return kInf;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("box shorthand: expected a number in " + text);
        }
        pos += used;
        return v;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) {
            throw std::invalid_argument(std::string("box shorthand: expected '") + c + "' in " +
                                        text);
        }
        ++pos;
    };
    while (true) {
        expect('[');
        lo.push_back(parse_endpoint());
        expect(',');
        hi.push_back(parse_endpoint());
        expect(']');
        skip_ws();
        if (pos >= text.size()) break;
        expect('x');
    }
    Eigen::VectorXd l(lo.size()), h(hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        l(static_cast<Eigen::Index>(i)) = lo[i];
        h(static_cast<Eigen::Index>(i)) = hi[i];
    }
    return {std::move(l), std::move(h)};
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_extended(std::string& out, double v) {
    if (v == kInf) out += "\"inf\"";
    else if (v == -kInf) out += "\"-inf\"";
    else out += format_number(v);
}

void append_vector(std::string& out, const Eigen::VectorXd& v, bool extended) {
    out += '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        if (extended) append_extended(out, v(i));
        else out += format_number(v(i));
    }
    out += ']';
}

}  // namespace

std::string to_json(const PolyUnion& u) {
    std::string out = "{\"union\":[";
    for (std::size_t p = 0; p < u.parts.size(); ++p) {
        if (p) out += ',';
        // A constraint-free part (all of R^n) round-trips as the trivial row.
        Polyhedron poly = u.parts[p];
        if (poly.constraints.empty()) {
            poly.add({Eigen::VectorXd::Zero(poly.dim), 0.0});
        }
        out += "{\"polyhedron\":{\"C\":[";
        for (std::size_t i = 0; i < poly.constraints.size(); ++i) {
            if (i) out += ',';
            append_vector(out, poly.constraints[i].normal, false);
        }
        out += "],\"d\":[";
        for (std::size_t i = 0; i < poly.constraints.size(); ++i) {
            if (i) out += ',';
            out += format_number(poly.constraints[i].offset);
        }
        out += "]}}";
    }
    out += "]}";
    return out;
}

std::string to_json(const NeuronTrace& t) {
    std::string out = "[";
    for (std::size_t it = 0; it < t.iterations.size(); ++it) {
        if (it) out += ',';
        out += '[';
        for (std::size_t g = 0; g < t.iterations[it].size(); ++g) {
            if (g) out += ',';
            out += "{\"lo\":";
            append_vector(out, t.iterations[it][g].lo, true);
            out += ",\"hi\":";
            append_vector(out, t.iterations[it][g].hi, true);
            out += '}';
        }
        out += ']';
    }
    out += ']';
    return out;
}

}  // namespace polyinv
