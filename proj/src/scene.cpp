#include "hmc/scene.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hmc/sampler.hpp"

namespace hmc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Strip a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

struct RawValue {
    std::string text;
    bool quoted = false;
    int line = 0;
};

using Table = std::map<std::string, RawValue>;

[[noreturn]] void fail(int line, const std::string& msg) {
    throw SceneError("scene line " + std::to_string(line) + ": " + msg);
}

double number_of(const RawValue& v, const std::string& key) {
    if (v.quoted) fail(v.line, key + " must be a number");
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size())
        fail(v.line, key + ": malformed number '" + v.text + "'");
    return out;
}

int integer_of(const RawValue& v, const std::string& key) {
    const double d = number_of(v, key);
    if (d != std::floor(d)) fail(v.line, key + " must be an integer");
    return static_cast<int>(d);
}

std::string string_of(const RawValue& v, const std::string& key) {
    if (!v.quoted) fail(v.line, key + " must be a quoted string");
    return v.text;
}

}  // namespace

SceneFile parse_scene_text(const std::string& text) {
    std::map<std::string, Table> tables;
    std::string current;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed table header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "functions" && current != "domain" && current != "output" &&
                current != "tolerances")
                fail(line_no, "unknown table [" + current + "]");
            tables.try_emplace(current);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        if (current.empty()) fail(line_no, "key outside of any table");
        const std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) fail(line_no, "expected key = value");
        RawValue rv;
        rv.line = line_no;
        if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"') fail(line_no, "unterminated string");
            rv.text = val.substr(1, val.size() - 2);
            rv.quoted = true;
        } else {
            rv.text = val;
        }
        if (!tables[current].emplace(key, rv).second) fail(line_no, "duplicate key " + key);
    }

    SceneFile out;

    auto it_fn = tables.find("functions");
    if (it_fn == tables.end()) throw SceneError("scene: missing [functions] table");
    Table fns = it_fn->second;
    auto take = [](Table& t, const std::string& key) {
        auto it = t.find(key);
        if (it == t.end()) return std::optional<RawValue>{};
        std::optional<RawValue> v(it->second);
        t.erase(it);
        return v;
    };
    auto reject_leftovers = [](const Table& t, const std::string& table) {
        if (!t.empty())
            fail(t.begin()->second.line, "unknown key '" + t.begin()->first + "' in [" + table + "]");
    };

    const auto gv = take(fns, "G");
    const auto hv = take(fns, "h");
    if (!gv || !hv) throw SceneError("scene: [functions] must define both G and h");
    reject_leftovers(fns, "functions");
    out.G_source = string_of(*gv, "G");
    out.h_source = string_of(*hv, "h");
    try {
        out.data.G = parse_expr(out.G_source);
    } catch (const ParseError& e) {
        fail(gv->line, std::string("G: ") + e.what());
    }
    try {
        out.data.h = parse_expr(out.h_source);
    } catch (const ParseError& e) {
        fail(hv->line, std::string("h: ") + e.what());
    }

    if (auto it = tables.find("domain"); it != tables.end()) {
        Table dom = it->second;
        DomainSpec& d = out.data.domain;
        if (auto v = take(dom, "kind")) {
            const std::string kind = string_of(*v, "kind");
            if (kind == "disk") d.kind = DomainKind::disk;
            else if (kind == "punctured_disk") d.kind = DomainKind::punctured_disk;
            else if (kind == "annulus") d.kind = DomainKind::annulus;
            else if (kind == "sector") d.kind = DomainKind::sector;
            else fail(v->line, "unknown domain kind '" + kind + "'");
        }
        if (auto v = take(dom, "r_inner")) d.r_inner = number_of(*v, "r_inner");
        if (auto v = take(dom, "r_outer")) d.r_outer = number_of(*v, "r_outer");
        if (auto v = take(dom, "n_r")) d.n_r = integer_of(*v, "n_r");
        if (auto v = take(dom, "n_theta")) d.n_theta = integer_of(*v, "n_theta");
        if (auto v = take(dom, "theta_min")) d.theta_min = number_of(*v, "theta_min");
        if (auto v = take(dom, "theta_max")) d.theta_max = number_of(*v, "theta_max");
        if (auto v = take(dom, "margin")) d.margin = number_of(*v, "margin");
        reject_leftovers(dom, "domain");
        if (d.r_inner < 0.0) throw SceneError("scene: r_inner must be >= 0");
        if (!(d.r_inner < d.r_outer)) throw SceneError("scene: need r_inner < r_outer");
        if (d.n_r < 4 || d.n_theta < 4) throw SceneError("scene: need n_r, n_theta >= 4");
        if (d.margin < 0.0) throw SceneError("scene: margin must be >= 0");
        if (d.kind == DomainKind::sector && !(d.theta_min < d.theta_max))
            throw SceneError("scene: need theta_min < theta_max");
    }

    if (auto it = tables.find("output"); it != tables.end()) {
        Table outp = it->second;
        if (auto v = take(outp, "format")) {
            out.output_format = string_of(*v, "format");
            if (out.output_format != "obj" && out.output_format != "ply")
                fail(v->line, "format must be \"obj\" or \"ply\"");
        }
        if (auto v = take(outp, "path")) out.output_path = string_of(*v, "path");
        reject_leftovers(outp, "output");
    }

    if (auto it = tables.find("tolerances"); it != tables.end()) {
        Table tol = it->second;
        if (auto v = take(tol, "weingarten")) out.tolerances.weingarten = number_of(*v, "weingarten");
        if (auto v = take(tol, "structure")) out.tolerances.structure = number_of(*v, "structure");
        if (auto v = take(tol, "locus")) out.tolerances.locus = number_of(*v, "locus");
        reject_leftovers(tol, "tolerances");
    }

    return out;
}

SceneFile load_scene_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read scene file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_scene_text(buf.str());
}

std::string scene_to_toml(const SceneFile& scene) {
    const DomainSpec& d = scene.data.domain;
    std::string kind;
    switch (d.kind) {
        case DomainKind::disk: kind = "disk"; break;
        case DomainKind::punctured_disk: kind = "punctured_disk"; break;
        case DomainKind::annulus: kind = "annulus"; break;
        case DomainKind::sector: kind = "sector"; break;
    }
    std::string out;
    out += "[functions]\n";
    out += "G = \"" + scene.G_source + "\"\n";
    out += "h = \"" + scene.h_source + "\"\n\n";
    out += "[domain]\n";
    out += "kind = \"" + kind + "\"\n";
    out += "r_inner = " + fmt_double(d.r_inner) + "\n";
    out += "r_outer = " + fmt_double(d.r_outer) + "\n";
    out += "n_r = " + std::to_string(d.n_r) + "\n";
    out += "n_theta = " + std::to_string(d.n_theta) + "\n";
    if (d.kind == DomainKind::sector) {
        out += "theta_min = " + fmt_double(d.theta_min) + "\n";
        out += "theta_max = " + fmt_double(d.theta_max) + "\n";
    }
    out += "margin = " + fmt_double(d.margin) + "\n\n";
    if (!scene.output_path.empty() || scene.output_format != "obj") {
        out += "[output]\n";
        out += "format = \"" + scene.output_format + "\"\n";
        if (!scene.output_path.empty()) out += "path = \"" + scene.output_path + "\"\n";
        out += "\n";
    }
    out += "[tolerances]\n";
    out += "weingarten = " + fmt_double(scene.tolerances.weingarten) + "\n";
    out += "structure = " + fmt_double(scene.tolerances.structure) + "\n";
    out += "locus = " + fmt_double(scene.tolerances.locus) + "\n";
    return out;
}

SceneFile make_example_scene(const std::string& name, double alpha, Complex k) {
    SceneFile scene;
    DomainSpec& d = scene.data.domain;
    if (name == "zalpha") {
        scene.G_source = "z";
        if (alpha == 1.0) {
            scene.h_source = "z";
            d.kind = DomainKind::disk;
            d.r_inner = 0.0;
            d.r_outer = 0.99;
        } else if (alpha == std::floor(alpha) && alpha > 0.0) {
            scene.h_source = "z^" + fmt_double(alpha);
            d.kind = DomainKind::punctured_disk;
            d.r_inner = 0.01;
            d.r_outer = 0.99;
        } else {
            // Fractional powers branch along the negative real axis; sample
            // one sheet on a sector just inside the cut.
            scene.h_source = "z^" + fmt_double(alpha);
            d.kind = DomainKind::sector;
            d.r_inner = 0.01;
            d.r_outer = 0.99;
            d.theta_min = -std::numbers::pi + 1e-3;
            d.theta_max = std::numbers::pi - 1e-3;
        }
    } else if (name == "expk") {
        if (k.imag() == 0.0) {
            scene.G_source = "exp(" + fmt_double(k.real()) + "*z)";
        } else {
            scene.G_source = "exp((" + fmt_double(k.real()) + (k.imag() < 0 ? "-" : "+") +
                             fmt_double(std::abs(k.imag())) + "i)*z)";
        }
        scene.h_source = "z";
        d.kind = DomainKind::disk;
        d.r_inner = 0.0;
        d.r_outer = 0.99;
    } else if (name == "joukowski") {
        scene.G_source = "z+1/z";
        scene.h_source = "z";
        d.kind = DomainKind::annulus;
        d.r_inner = 0.05;
        d.r_outer = 0.98;
    } else {
        throw SceneError("unknown example '" + name + "' (expected zalpha, expk, or joukowski)");
    }
    scene.data.G = parse_expr(scene.G_source);
    scene.data.h = parse_expr(scene.h_source);
    return scene;
}

}  // namespace hmc
