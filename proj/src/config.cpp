#include "lightlike/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace lightlike {

namespace {

struct Entry {
    std::string value;
    int line;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Splits a value into fields; quoted fields may contain spaces.
std::vector<std::string> split_fields(const std::string& value, int line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < value.size()) {
        if (std::isspace(static_cast<unsigned char>(value[i]))) {
            ++i;
            continue;
        }
        if (value[i] == '"') {
            std::size_t close = value.find('"', i + 1);
            if (close == std::string::npos)
                throw ConfigError("line " + std::to_string(line) + ": unterminated quote");
            out.push_back(value.substr(i + 1, close - i - 1));
            i = close + 1;
        } else {
            std::size_t end = i;
            while (end < value.size() && !std::isspace(static_cast<unsigned char>(value[end])))
                ++end;
            out.push_back(value.substr(i, end - i));
            i = end;
        }
    }
    return out;
}

double to_number(const std::string& s, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                          "' expects a number, got '" + s + "'");
    }
}

int to_int(const std::string& s, int line, const std::string& key) {
    const double v = to_number(s, line, key);
    const int i = static_cast<int>(v);
    if (v != i) throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                                  "' expects an integer");
    return i;
}

class Sections {
  public:
    std::map<std::string, Section> table;

    const Entry* find(const std::string& sec, const std::string& key) const {
        auto s = table.find(sec);
        if (s == table.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        return &k->second;
    }
    const Entry& need(const std::string& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (!e)
            throw ConfigError("missing field '" + key + "' in section [" + sec + "]");
        return *e;
    }
};

int coord_slot(const std::string& name, int line) {
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '4')
        return name[1] - '1';
    throw ConfigError("line " + std::to_string(line) + ": expected coordinate name x1..x4, got '" +
                      name + "'");
}

} // namespace

SurfaceConfig parse_config(const std::string& text, const std::string& origin) {
    Sections cfg;
    std::string current = "";
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool any_content = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        any_content = true;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("line " + std::to_string(line) + ": malformed section header");
            current = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key");
        cfg.table[current][key] = Entry{value, line};
    }
    if (!any_content) throw ConfigError(origin + ": empty configuration");

    SurfaceConfig out;
    out.name = origin;

    {
        const Entry& e = cfg.need("", "schema");
        out.schema = to_int(e.value, e.line, "schema");
        if (out.schema != 1) throw ConfigError("unsupported schema " + std::to_string(out.schema));
    }

    {
        const Entry& e = cfg.need("ambient", "signature");
        const auto fields = split_fields(e.value, e.line);
        if (fields.size() != 4) throw ConfigError("signature needs 4 entries of +1/-1");
        std::array<int, 4> signs{};
        for (int i = 0; i < 4; ++i) {
            const double v = to_number(fields[static_cast<std::size_t>(i)], e.line, "signature");
            if (v != 1.0 && v != -1.0) throw ConfigError("signature entries must be +1 or -1");
            signs[static_cast<std::size_t>(i)] = static_cast<int>(v);
        }
        out.metric = Metric4::from_signs(signs);
        if (out.metric.index() != 1 && out.metric.index() != 2)
            throw ConfigError("metric index must be 1 or 2");
    }

    Box box;
    {
        const Entry& e1 = cfg.need("domain", "u1");
        const auto f1 = split_fields(e1.value, e1.line);
        const Entry& e2 = cfg.need("domain", "u2");
        const auto f2 = split_fields(e2.value, e2.line);
        if (f1.size() != 2 || f2.size() != 2)
            throw ConfigError("domain entries need 'lo hi'");
        box.lo = {to_number(f1[0], e1.line, "u1"), to_number(f2[0], e2.line, "u2")};
        box.hi = {to_number(f1[1], e1.line, "u1"), to_number(f2[1], e2.line, "u2")};
        if (!(box.lo[0] < box.hi[0]) || !(box.lo[1] < box.hi[1]))
            throw ConfigError("domain box must have positive extent");
    }

    {
        const Entry& form = cfg.need("surface", "form");
        if (form.value == "graph") {
            const Entry& free = cfg.need("surface", "free");
            const auto names = split_fields(free.value, free.line);
            if (names.size() != 2) throw ConfigError("graph form needs two free coordinates");
            const int a = coord_slot(names[0], free.line);
            const int b = coord_slot(names[1], free.line);
            if (a >= b) throw ConfigError("free coordinates must be listed in increasing order");
            const auto vocab_arr = Immersion::graph_names(a, b);
            const std::vector<std::string> vocab{vocab_arr[0], vocab_arr[1]};
            std::array<Expr, 2> dep;
            int slot = 0;
            for (int k = 0; k < 4; ++k) {
                if (k == a || k == b) continue;
                const std::string key = "x" + std::to_string(k + 1);
                const Entry& e = cfg.need("surface", key);
                const auto fields = split_fields(e.value, e.line);
                if (fields.size() != 1)
                    throw ConfigError("surface coordinate '" + key + "' expects one expression");
                try {
                    dep[slot++] = Expr::parse(fields[0], vocab);
                } catch (const ParseError& pe) {
                    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": " +
                                      pe.what());
                }
            }
            out.immersion = Immersion::graph(a, b, dep[0], dep[1], box);
        } else if (form.value == "parametric") {
            const auto vocab_arr = Immersion::parametric_names();
            const std::vector<std::string> vocab{vocab_arr[0], vocab_arr[1]};
            std::array<Expr, 4> coords;
            for (int k = 0; k < 4; ++k) {
                const std::string key = "x" + std::to_string(k + 1);
                const Entry& e = cfg.need("surface", key);
                const auto fields = split_fields(e.value, e.line);
                if (fields.size() != 1)
                    throw ConfigError("surface coordinate '" + key + "' expects one expression");
                try {
                    coords[static_cast<std::size_t>(k)] = Expr::parse(fields[0], vocab);
                } catch (const ParseError& pe) {
                    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": " +
                                      pe.what());
                }
            }
            out.immersion = Immersion::parametric(coords, box);
        } else {
            throw ConfigError("surface form must be 'graph' or 'parametric'");
        }
    }

    // optional pins, expressions in the parameter vocabulary
    {
        const std::vector<std::string> vocab{out.immersion.param_names()[0],
                                             out.immersion.param_names()[1]};
        auto read_pin = [&](const char* key) -> std::optional<std::array<Expr, 4>> {
            const Entry* e = cfg.find("pins", key);
            if (!e) return std::nullopt;
            const auto fields = split_fields(e->value, e->line);
            if (fields.size() != 4)
                throw ConfigError("pin '" + std::string(key) + "' needs 4 expressions");
            std::array<Expr, 4> exprs;
            for (int k = 0; k < 4; ++k) {
                try {
                    exprs[static_cast<std::size_t>(k)] = Expr::parse(fields[static_cast<std::size_t>(k)], vocab);
                } catch (const ParseError& pe) {
                    throw ConfigError("line " + std::to_string(e->line) + ": pin " + key + ": " +
                                      pe.what());
                }
            }
            return exprs;
        };
        out.immersion.pins.xi = read_pin("xi");
        out.immersion.pins.v = read_pin("v");
        out.immersion.pins.u = read_pin("u");
    }

    if (const Entry* e = cfg.find("grid", "n1")) out.grid.n1 = to_int(e->value, e->line, "n1");
    if (const Entry* e = cfg.find("grid", "n2")) out.grid.n2 = to_int(e->value, e->line, "n2");
    if (out.grid.n1 < 1 || out.grid.n2 < 1) throw ConfigError("grid must be non-empty");

    if (const Entry* e = cfg.find("checks", "run")) {
        out.checks = CheckSet{false, false, false, false};
        for (const auto& f : split_fields(e->value, e->line)) {
            if (f == "frame") out.checks.frame = true;
            else if (f == "forms") out.checks.forms = true;
            else if (f == "sections") out.checks.sections = true;
            else if (f == "classify") out.checks.classify = true;
            else throw ConfigError("unknown check '" + f + "'");
        }
    }
    if (const Entry* e = cfg.find("checks", "backend")) {
        if (e->value == "jet") out.backend = BackendChoice::Jet;
        else if (e->value == "fd") out.backend = BackendChoice::Fd;
        else if (e->value == "both") out.backend = BackendChoice::Both;
        else throw ConfigError("backend must be jet, fd, or both");
    }
    if (const Entry* e = cfg.find("checks", "tol_jet"))
        out.tol_jet = to_number(e->value, e->line, "tol_jet");
    if (const Entry* e = cfg.find("checks", "tol_fd"))
        out.tol_fd = to_number(e->value, e->line, "tol_fd");
    if (!(out.tol_jet > 0.0) || !(out.tol_fd > 0.0))
        throw ConfigError("tolerances must be positive");

    return out;
}

SurfaceConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = path;
    const std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    return parse_config(buf.str(), base);
}

} // namespace lightlike
