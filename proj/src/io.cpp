#include "erglab/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "erglab/errors.hpp"

namespace erglab {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end())
        throw Error(ErrKind::ParseError,
                    std::string("missing field \"") + name + "\"");
    return *it;
}

std::vector<int> int_array(const json& j, const char* name) {
    if (!j.is_array())
        throw Error(ErrKind::ParseError, std::string(name) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer())
            throw Error(ErrKind::ParseError, std::string(name) + "[" +
                                                 std::to_string(i) +
                                                 "] must be an integer");
        out.push_back(j[i].get<int>());
    }
    return out;
}

} // namespace

SystemDocument parse_system_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrKind::ParseError,
                    "not valid JSON at byte " + std::to_string(e.byte) + ": " +
                        e.what());
    }
    if (!doc.is_object())
        throw Error(ErrKind::ParseError, "document must be a JSON object");

    SystemDocument out;
    const json& pts = field(doc, "points");
    if (pts.is_number_integer()) {
        out.points = pts.get<int>();
    } else if (pts.is_array()) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].is_string())
                throw Error(ErrKind::ParseError,
                            "points[" + std::to_string(i) +
                                "] must be a string label");
            out.labels.push_back(pts[i].get<std::string>());
        }
        out.points = static_cast<int>(out.labels.size());
    } else {
        throw Error(ErrKind::ParseError,
                    "points must be a count or a list of labels");
    }
    if (out.points < 1)
        throw Error(ErrKind::ParseError, "points must be at least 1");

    const json& w = field(doc, "weights");
    if (!w.is_array())
        throw Error(ErrKind::ParseError, "weights must be an array");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_string())
            throw Error(ErrKind::ParseError,
                        "weights[" + std::to_string(i) +
                            "] must be a rational string \"p/q\"");
        try {
            out.weights.push_back(rat_parse(w[i].get<std::string>()));
        } catch (const Error& e) {
            throw Error(ErrKind::ParseError,
                        "weights[" + std::to_string(i) + "]: " + e.what());
        }
    }
    out.t1 = int_array(field(doc, "t1"), "t1");
    out.t2 = int_array(field(doc, "t2"), "t2");
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            throw Error(ErrKind::ParseError, "name must be a string");
        out.name = doc["name"].get<std::string>();
    }
    return out;
}

SystemDocument read_system_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrKind::ParseError, "cannot read \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_document(buf.str());
}

CommutingSystem system_from_document(const SystemDocument& doc) {
    if (static_cast<int>(doc.weights.size()) != doc.points)
        throw Error(ErrKind::ValidationError,
                    "document has " + std::to_string(doc.points) +
                        " points but " + std::to_string(doc.weights.size()) +
                        " weights");
    CommutingSystem sys = validate_system(make_space(doc.weights),
                                          make_transformation(doc.t1),
                                          make_transformation(doc.t2));
    sys.name = doc.name;
    return sys;
}

SystemDocument document_from_system(const CommutingSystem& sys,
                                    const std::vector<std::string>& labels) {
    SystemDocument doc;
    doc.points = sys.size();
    doc.labels = labels;
    doc.weights = sys.space.w;
    doc.t1 = sys.t1.fwd;
    doc.t2 = sys.t2.fwd;
    doc.name = sys.name;
    return doc;
}

std::string emit_system_document(const SystemDocument& doc) {
    json j;
    if (doc.labels.empty()) j["points"] = doc.points;
    else j["points"] = doc.labels;
    std::vector<std::string> w;
    w.reserve(doc.weights.size());
    for (const Rat& r : doc.weights) w.push_back(rat_str(r));
    j["weights"] = w;
    j["t1"] = doc.t1;
    j["t2"] = doc.t2;
    if (!doc.name.empty()) j["name"] = doc.name;
    return j.dump(2) + "\n";
}

Observable parse_observable_literal(const std::string& text, int points) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
        return parts;
    };

    if (text.rfind("const:", 0) == 0)
        return const_observable(points, rat_parse(text.substr(6)));

    if (text.rfind("indicator:", 0) == 0) {
        std::string rest = text.substr(10);
        if (rest.empty())
            throw Error(ErrKind::ParseError, "indicator needs at least one point");
        std::vector<int> pts;
        for (const std::string& p : split(rest)) {
            try {
                pts.push_back(std::stoi(p));
            } catch (const std::exception&) {
                throw Error(ErrKind::ParseError,
                            "bad point index \"" + p + "\" in indicator");
            }
        }
        return indicator(points, pts);
    }

    std::vector<std::string> parts = split(text);
    if (static_cast<int>(parts.size()) != points)
        throw Error(ErrKind::ParseError,
                    "observable lists " + std::to_string(parts.size()) +
                        " values for " + std::to_string(points) + " points");
    Observable f{std::vector<Rat>()};
    f.v.reserve(parts.size());
    for (const std::string& p : parts) f.v.push_back(rat_parse(p));
    return f;
}

} // namespace erglab
