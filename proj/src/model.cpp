#include "orthant/model.hpp"

#include "orthant/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace orthant {

using nlohmann::json;

bool WalkModel::small_step() const {
    for (const auto& s : steps)
        for (int c : s)
            if (c < -1 || c > 1) return false;
    return true;
}

namespace {

Rat parse_weight(const json& w, size_t idx) {
    if (w.is_number_integer()) {
        long v = w.get<long>();
        if (v <= 0) fail_parse("weight " + std::to_string(idx) + " must be positive");
        return Rat(v);
    }
    if (w.is_string()) {
        Rat r;
        try {
            r = rat_parse(w.get<std::string>());
        } catch (const Error& e) {
            fail_parse("weight " + std::to_string(idx) + ": " + e.what());
        }
        if (r <= 0) fail_parse("weight " + std::to_string(idx) + " must be positive");
        return r;
    }
    fail_parse("weight " + std::to_string(idx) + " must be an integer or a \"p/q\" string");
}

} // namespace

WalkModel parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail_parse(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail_parse("model must be a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        fail_parse("missing integer field \"dim\"");
    if (!j.contains("steps") || !j["steps"].is_array())
        fail_parse("missing array field \"steps\"");

    WalkModel m;
    m.dim = j["dim"].get<int>();
    if (m.dim < 1) fail_parse("dim must be >= 1");
    if (j.contains("name")) {
        if (!j["name"].is_string()) fail_parse("\"name\" must be a string");
        m.name = j["name"].get<std::string>();
    }

    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < j["steps"].size(); ++i) {
        const json& js = j["steps"][i];
        if (!js.is_array())
            fail_parse("step " + std::to_string(i) + " must be an array of integers");
        std::vector<int> s;
        for (const json& c : js) {
            if (!c.is_number_integer())
                fail_parse("step " + std::to_string(i) + " must contain only integers");
            s.push_back(c.get<int>());
        }
        if (static_cast<int>(s.size()) != m.dim)
            fail_parse("step " + std::to_string(i) + " has " + std::to_string(s.size()) +
                       " coordinates; expected " + std::to_string(m.dim));
        if (std::all_of(s.begin(), s.end(), [](int c) { return c == 0; }))
            fail_parse("step " + std::to_string(i) + " is the zero vector");
        if (!seen.insert(s).second)
            fail_parse("duplicate step at index " + std::to_string(i));
        m.steps.push_back(std::move(s));
    }
    if (m.steps.empty()) fail_parse("step set is empty");

    if (j.contains("weights")) {
        const json& jw = j["weights"];
        if (!jw.is_array()) fail_parse("\"weights\" must be an array");
        if (jw.size() != m.steps.size())
            fail_parse("got " + std::to_string(jw.size()) + " weights for " +
                       std::to_string(m.steps.size()) + " steps");
        for (size_t i = 0; i < jw.size(); ++i) m.weights.push_back(parse_weight(jw[i], i));
    } else {
        m.weights.assign(m.steps.size(), Rat(1));
    }

    Rat total = 0;
    for (const Rat& w : m.weights) total += w;
    for (Rat& w : m.weights) w /= total;
    return m;
}

WalkModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_parse("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string serialize_model(const WalkModel& m) {
    json j;
    if (!m.name.empty()) j["name"] = m.name;
    j["dim"] = m.dim;
    j["steps"] = m.steps;
    json jw = json::array();
    for (const Rat& w : m.weights) jw.push_back(rat_str(w));
    j["weights"] = jw;
    return j.dump(2);
}

PolyQ inventory(const WalkModel& m) {
    PolyQ chi(m.dim);
    for (size_t i = 0; i < m.steps.size(); ++i) chi.add_term(m.steps[i], m.weights[i]);
    return chi;
}

std::vector<SectionTriple> sections(const WalkModel& m) {
    if (!m.small_step())
        fail_domain("axis sections require a small-step model (coordinates in {-1,0,1})");
    std::vector<SectionTriple> out;
    for (int axis = 0; axis < m.dim; ++axis) {
        SectionTriple t;
        t.axis = axis;
        t.A = PolyQ(m.dim);
        t.B = PolyQ(m.dim);
        t.C = PolyQ(m.dim);
        for (size_t i = 0; i < m.steps.size(); ++i) {
            std::vector<int> e = m.steps[i];
            int dir = e[axis];
            e[axis] = 0;
            (dir > 0 ? t.A : dir < 0 ? t.C : t.B).add_term(e, m.weights[i]);
        }
        if (t.A.empty() || t.C.empty())
            fail_domain("axis " + std::to_string(axis) +
                        ": step set never moves in the " + (t.A.empty() ? "+" : "-") +
                        " direction, so no interior critical point exists");
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

// Mixed-radix index of a point in [0,box]^d.
size_t box_index(const std::vector<int>& p, int box) {
    size_t idx = 0;
    for (int c : p) idx = idx * (box + 1) + static_cast<size_t>(c);
    return idx;
}

std::vector<uint8_t> box_bfs(const WalkModel& m, int box, int sign) {
    const size_t side = static_cast<size_t>(box) + 1;
    size_t total = 1;
    for (int i = 0; i < m.dim; ++i) {
        if (total > size_t(100'000'000) / side)
            fail_budget("reachability window too large; reduce the window box");
        total *= side;
    }
    std::vector<uint8_t> vis(total, 0);
    std::deque<std::vector<int>> q;
    q.emplace_back(m.dim, 0);
    vis[0] = 1;
    while (!q.empty()) {
        std::vector<int> p = std::move(q.front());
        q.pop_front();
        for (const auto& s : m.steps) {
            std::vector<int> np(m.dim);
            bool in = true;
            for (int i = 0; i < m.dim; ++i) {
                np[i] = p[i] + sign * s[i];
                if (np[i] < 0 || np[i] > box) { in = false; break; }
            }
            if (!in) continue;
            size_t idx = box_index(np, box);
            if (!vis[idx]) {
                vis[idx] = 1;
                q.push_back(std::move(np));
            }
        }
    }
    return vis;
}

} // namespace

H1Result check_h1(const WalkModel& m, int box) {
    if (box < 1) fail_domain("window box must be >= 1");
    // Forward orbit of the origin, and backward orbit (walking reversed steps).
    std::vector<uint8_t> fwd = box_bfs(m, box, +1);
    std::vector<uint8_t> bwd = box_bfs(m, box, -1);

    const int t = std::min(3, box);
    std::vector<int> p(m.dim, 0);
    H1Result r;
    while (true) {
        size_t idx = box_index(p, box);
        if (!fwd[idx]) {
            r.witness = p;
            r.reason = "not reachable from the origin within the window";
            return r;
        }
        if (!bwd[idx]) {
            r.witness = p;
            r.reason = "cannot return to the origin within the window";
            return r;
        }
        int i = m.dim - 1;
        while (i >= 0 && p[i] == t) p[i--] = 0;
        if (i < 0) break;
        ++p[i];
    }
    r.ok = true;
    return r;
}

} // namespace orthant
