#pragma once

// Batch jobs: a JSON document selects one command and its parameters; the
// result is a one-line summary plus an artifact (JSON, CSV, SVG or DOT text).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bundles.hpp"
#include "crystal.hpp"
#include "demazure.hpp"
#include "stringpoly.hpp"
#include "twistedcube.hpp"

namespace fbs {

using nlohmann::json;

struct JobOptions {
    std::optional<std::uint64_t> seed;
    std::size_t budget = default_vertex_budget;
    bool echo_word = false;
    std::optional<std::string> format;
};

struct JobResult {
    std::string summary;            // one line, no trailing newline
    std::string format;             // json, csv, svg or dot
    std::string artifact;           // file contents
    std::optional<std::string> path; // output.path from the config, if any
    json words = json::array();     // reduced words chosen automatically
};

/// Exit status for an exception escaping run_job.
inline int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const UnsupportedInput*>(&e)) return 3;
    if (dynamic_cast<const BudgetExceeded*>(&e)) return 4;
    if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const json::exception*>(&e)) return 2;
    return 1;
}

inline json error_json(const std::exception& e)
{
    const char* kind = "internal";
    switch (exit_code_for(e)) {
    case 2: kind = "invalid_input"; break;
    case 3: kind = "unsupported_input"; break;
    case 4: kind = "budget_exceeded"; break;
    default: break;
    }
    return json{{"error", kind}, {"message", e.what()}};
}

/// Writes through a temporary file in the same directory, then renames it into place.
inline void write_atomic(const std::filesystem::path& target, const std::string& contents)
{
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << contents;
        os.flush();
        if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, target);
}

namespace detail {

inline const std::map<std::string, std::set<std::string>>& command_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"crystal", {"weight"}},
        {"demazure", {"weight", "word"}},
        {"gen-demazure", {"word", "a", "subsets", "weights"}},
        {"lattice-points", {"word", "a", "level", "subsets", "weights"}},
        {"multiplicity", {"subsets", "word", "weights", "nu"}},
        {"tensor-decompose", {"weights"}},
        {"component-count", {"subsets", "word", "weights"}},
        {"fiber", {"subsets", "word", "weights", "point"}},
        {"bundle-vectors", {"subsets", "word", "weights"}},
        {"cube-volume", {"word", "a", "subsets", "weights"}},
        {"cube-moments", {"word", "a", "subsets", "weights", "degree", "moments"}},
        {"cube-histogram", {"word", "a", "subsets", "weights", "bins", "samples", "seed", "axes"}},
        {"cube-svg", {"word", "a", "subsets", "weights", "bins", "samples", "seed", "axes"}},
    };
    return keys;
}

inline RootSystem parse_root_system(const json& j)
{
    if (j.is_string()) return RootSystem::preset(j.get<std::string>());
    if (j.is_array()) return RootSystem(CartanMatrix(j.get<std::vector<std::vector<int>>>()));
    throw InvalidInput("root_system must be a preset name or an integer grid");
}

template <class T>
T get_as(const json& cfg, const char* key)
{
    if (!cfg.contains(key)) throw InvalidInput(std::string("missing required key '") + key + "'");
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput(std::string("key '") + key + "' has the wrong type");
    }
}

inline Weight weight_from(const json& cfg, const char* key, const RootSystem& rs)
{
    Weight w(get_as<std::vector<Coord>>(cfg, key));
    rs.check_weight(w);
    return w;
}

inline std::vector<Weight> weights_from(const json& cfg, const RootSystem& rs)
{
    std::vector<Weight> out;
    for (auto& c : get_as<std::vector<std::vector<Coord>>>(cfg, "weights")) {
        out.emplace_back(std::move(c));
        rs.check_weight(out.back());
    }
    if (out.empty()) throw InvalidInput("weights must be nonempty");
    return out;
}

inline json weight_json(const Weight& w) { return json(w.coords); }

inline json points_json(const std::vector<StringVector>& pts)
{
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(p);
    return arr;
}

// Subsets plus either the given flat word (split by block) or the longest words.
struct SubsetShape {
    SubsetSequence seq;
    WordSequence words;
};

inline SubsetShape subset_shape(const json& cfg, const RootSystem& rs, JobResult& res)
{
    SubsetShape s;
    s.seq.sets = get_as<std::vector<std::vector<int>>>(cfg, "subsets");
    if (s.seq.sets.empty()) throw InvalidInput("subsets must be nonempty");
    s.seq.validate(rs.rank());
    if (cfg.contains("word")) {
        std::vector<std::size_t> lengths;
        for (const auto& set : s.seq.sets) lengths.push_back(rs.positive_root_count(set));
        s.words = WordSequence::split(get_as<Word>(cfg, "word"), lengths);
    } else {
        s.words = rs.longest_words(s.seq);
        for (const auto& b : s.words.blocks) res.words.push_back(b);
    }
    rs.check_compatible(s.seq, s.words);
    return s;
}

struct CubeShape {
    Word word;
    std::vector<Coord> a;
    ProjectionMap L;
};

// Either (word, a) with the identity projection, or (subsets, weights[, word])
// with the pullback vector and the block projection.
inline CubeShape cube_shape(const json& cfg, const RootSystem& rs, JobResult& res)
{
    if (cfg.contains("subsets")) {
        if (cfg.contains("a")) throw InvalidInput("give either a or subsets/weights, not both");
        auto s = subset_shape(cfg, rs, res);
        auto lambdas = weights_from(cfg, rs);
        return {s.words.flat(), flatten(pullback_vector(rs, s.seq, s.words, lambdas)),
                projection_map(rs, s.seq, s.words)};
    }
    CubeShape c{get_as<Word>(cfg, "word"), get_as<std::vector<Coord>>(cfg, "a"), {}};
    c.L = ProjectionMap::identity(c.word.size());
    return c;
}

inline std::string multi_key(const std::vector<std::uint32_t>& m)
{
    std::string s;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(m[k]);
    }
    return s;
}

inline std::string csv_points(const WordSequence& words, const std::vector<StringVector>& pts)
{
    std::string s;
    bool first = true;
    for (std::size_t k = 0; k < words.size(); ++k)
        for (std::size_t l = 0; l < words.blocks[k].size(); ++l) {
            if (!first) s += ',';
            first = false;
            s += "x" + std::to_string(k + 1) + "_" + std::to_string(l + 1);
        }
    s += '\n';
    for (const auto& p : pts) {
        for (std::size_t q = 0; q < p.size(); ++q) {
            if (q) s += ',';
            s += std::to_string(p[q]);
        }
        s += '\n';
    }
    return s;
}

inline json table_json(const MultiplicityTable& t)
{
    json j = json::object();
    for (const auto& [nu, c] : t) j[to_key(nu)] = c;
    return j;
}

inline std::string table_summary(const MultiplicityTable& t)
{
    std::string s;
    for (const auto& [nu, c] : t) {
        if (!s.empty()) s += ' ';
        s += "(" + to_key(nu) + "):" + std::to_string(c);
    }
    return s;
}

inline std::string word_string(const Word& w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(w[k]);
    }
    return s;
}

} // namespace detail

/// Runs one job. Throws InvalidInput (exit 2), UnsupportedInput (exit 3) or BudgetExceeded (exit 4).
inline JobResult run_job(const json& cfg, const JobOptions& opt = {})
{
    using namespace detail;
    if (!cfg.is_object()) throw InvalidInput("config must be a JSON object");
    const auto command = get_as<std::string>(cfg, "command");
    const auto& table = command_keys();
    auto allowed_it = table.find(command);
    if (allowed_it == table.end()) throw InvalidInput("unknown command '" + command + "'");
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command" || key == "root_system" || key == "output") continue;
        if (!allowed_it->second.count(key))
            throw InvalidInput("unknown key '" + key + "' for command '" + command + "'");
    }

    JobResult res;
    std::string format = "json";
    if (cfg.contains("output")) {
        const auto& out = cfg.at("output");
        if (!out.is_object()) throw InvalidInput("output must be an object");
        for (const auto& [key, value] : out.items())
            if (key != "path" && key != "format") throw InvalidInput("unknown key 'output." + key + "'");
        if (out.contains("path")) res.path = get_as<std::string>(out, "path");
        if (out.contains("format")) format = get_as<std::string>(out, "format");
    }
    if (command == "cube-svg") format = "svg";
    if (command == "cube-histogram" && !(cfg.contains("output") && cfg.at("output").contains("format")))
        format = "csv";
    if (opt.format) format = *opt.format;

    const RootSystem rs = parse_root_system(get_as<json>(cfg, "root_system"));
    CrystalFactory factory(rs, opt.budget);
    json data;

    auto require_format = [&](std::initializer_list<const char*> ok) {
        for (const char* f : ok)
            if (format == f) return;
        throw InvalidInput("format '" + format + "' is not available for command '" + command + "'");
    };

    if (command == "crystal") {
        require_format({"json", "dot"});
        auto c = factory.get(weight_from(cfg, "weight", rs));
        const auto& g = c->graph;
        json vs = json::array(), es = json::array();
        for (std::size_t v = 0; v < g.size(); ++v) vs.push_back({{"index", v}, {"weight", weight_json(g.wt(v))}});
        for (const auto& e : g.edges()) es.push_back({{"src", e.src}, {"label", e.label}, {"dst", e.dst}});
        data = {{"highest_weight", weight_json(c->highest_weight)}, {"size", g.size()}, {"vertices", vs},
                {"edges", es}};
        res.summary = "crystal: " + std::to_string(g.size()) + " vertices, " + std::to_string(g.edges().size()) +
                      " edges";
        if (format == "dot") res.artifact = g.to_dot();
    } else if (command == "demazure") {
        require_format({"json", "csv"});
        const Word w = get_as<Word>(cfg, "word");
        auto d = demazure_crystal(factory, weight_from(cfg, "weight", rs), w);
        const auto pts = d.omega_points();
        data = {{"word", w}, {"size", d.size()}, {"points", points_json(pts)}};
        res.summary = "demazure: " + std::to_string(d.size()) + " elements";
        if (format == "csv") res.artifact = csv_points(d.blocks(), pts);
    } else if (command == "gen-demazure" || command == "lattice-points") {
        require_format({"json", "csv"});
        std::optional<GenDemazureCrystal> g;
        Coord level = 1;
        if (cfg.contains("level")) {
            if (command != "lattice-points") throw InvalidInput("level is only valid for lattice-points");
            level = get_as<Coord>(cfg, "level");
            if (level < 1) throw InvalidInput("level must be positive");
        }
        if (cfg.contains("subsets")) {
            if (cfg.contains("a")) throw InvalidInput("give either a or subsets/weights, not both");
            if (level != 1) throw InvalidInput("level applies to the (word, a) shape only");
            auto s = subset_shape(cfg, rs, res);
            g.emplace(gen_demazure_crystal_weights(factory, s.seq, s.words, weights_from(cfg, rs)));
            data["shape"] = {{"subsets", s.seq.sets}, {"word", s.words.flat()}};
        } else {
            auto a = get_as<std::vector<Coord>>(cfg, "a");
            for (auto& v : a) v *= level;
            const Word w = get_as<Word>(cfg, "word");
            g.emplace(gen_demazure_crystal(factory, w, a));
            data["shape"] = {{"word", w}, {"a", get_as<std::vector<Coord>>(cfg, "a")}};
            if (command == "lattice-points") data["level"] = level;
        }
        const auto pts = g->omega_points();
        data["size"] = g->size();
        data["points"] = points_json(pts);
        if (command == "gen-demazure") {
            try {
                json comps = json::object();
                for (const auto& w : g->decompose()) comps[to_key(w)] = comps.value(to_key(w), 0) + 1;
                data["components"] = comps;
            } catch (const InvalidInput&) {
                data["components"] = nullptr;
            }
        }
        res.summary = command + ": " + std::to_string(g->size()) + (command == "gen-demazure" ? " elements" : " points");
        if (format == "csv") res.artifact = csv_points(g->blocks(), pts);
    } else if (command == "multiplicity") {
        require_format({"json"});
        auto s = subset_shape(cfg, rs, res);
        auto lambdas = weights_from(cfg, rs);
        if (cfg.contains("nu")) {
            const Weight nu = weight_from(cfg, "nu", rs);
            const auto m = multiplicity(factory, s.seq, s.words, lambdas, nu);
            data = {{"nu", weight_json(nu)}, {"multiplicity", m}};
            res.summary = std::to_string(m);
        } else {
            const auto t = multiplicities(factory, s.seq, s.words, lambdas);
            data = {{"multiplicities", table_json(t)}};
            res.summary = "multiplicity: " + table_summary(t);
        }
    } else if (command == "tensor-decompose") {
        require_format({"json"});
        const auto t = tensor_decompose(factory, weights_from(cfg, rs));
        data = table_json(t);
        res.summary = "tensor-decompose: " + table_summary(t);
    } else if (command == "component-count") {
        require_format({"json"});
        auto s = subset_shape(cfg, rs, res);
        const auto c = component_count(factory, s.seq, s.words, weights_from(cfg, rs));
        data = {{"components", c}};
        res.summary = std::to_string(c);
    } else if (command == "fiber") {
        require_format({"json", "csv"});
        auto s = subset_shape(cfg, rs, res);
        auto lambdas = weights_from(cfg, rs);
        const auto x = get_as<StringVector>(cfg, "point");
        const auto pts = fiber_string_points(factory, s.seq, s.words, lambdas, x);
        data = {{"point", x}, {"weight", weight_json(fiber_weight(rs, s.words, lambdas, x))}, {"size", pts.size()},
                {"points", points_json(pts)}};
        res.summary = "fiber: " + std::to_string(pts.size()) + " points";
        if (format == "csv") res.artifact = csv_points(WordSequence{{s.words.blocks[0]}}, pts);
    } else if (command == "bundle-vectors") {
        require_format({"json"});
        auto s = subset_shape(cfg, rs, res);
        auto lambdas = weights_from(cfg, rs);
        json tower = json::array();
        for (const auto& e : flag_bott_vectors(rs, s.seq))
            tower.push_back({{"k", e.k}, {"j", e.j}, {"l", e.l}, {"vector", e.vector}});
        data = {{"a", pullback_vector(rs, s.seq, s.words, lambdas)},
                {"mu", weight_json(mu_weight(rs, s.seq, s.words, lambdas))},
                {"degeneration", degeneration_vectors(rs, s.seq, lambdas)},
                {"tower", tower}};
        std::string a;
        for (auto v : flatten(pullback_vector(rs, s.seq, s.words, lambdas))) a += (a.empty() ? "" : ",") + std::to_string(v);
        res.summary = "bundle-vectors: a = (" + a + "), mu = (" + to_key(mu_weight(rs, s.seq, s.words, lambdas)) + ")";
    } else {
        // twisted cube commands
        auto shape = cube_shape(cfg, rs, res);
        const TwistedCube cube(rs, shape.word, shape.a);
        data["word"] = shape.word;
        data["a"] = shape.a;
        if (command == "cube-volume") {
            require_format({"json"});
            const auto v = signed_volume(cube);
            data["volume"] = to_string(v);
            data["signed_lattice_count"] = signed_lattice_count(cube);
            res.summary = to_string(v);
        } else if (command == "cube-moments") {
            require_format({"json"});
            std::vector<std::vector<std::uint32_t>> ms;
            if (cfg.contains("moments")) {
                if (cfg.contains("degree")) throw InvalidInput("give either degree or moments, not both");
                ms = get_as<std::vector<std::vector<std::uint32_t>>>(cfg, "moments");
            } else {
                const auto d = cfg.contains("degree") ? get_as<std::uint32_t>(cfg, "degree") : 1u;
                ms = multi_indices(shape.L.rows, d);
            }
            json mj = json::object();
            for (const auto& m : ms) mj[multi_key(m)] = to_string(pushforward_moment(cube, shape.L, m));
            data["moments"] = mj;
            res.summary = "cube-moments: " + std::to_string(ms.size()) + " moments";
            for (const auto& m : ms) res.summary += " [" + multi_key(m) + "]=" + mj[multi_key(m)].get<std::string>();
        } else {
            const std::size_t bins = cfg.contains("bins") ? get_as<std::size_t>(cfg, "bins") : 40;
            const std::uint64_t samples =
                cfg.contains("samples") ? get_as<std::uint64_t>(cfg, "samples") : 1'000'000;
            std::uint64_t seed = cfg.contains("seed") ? get_as<std::uint64_t>(cfg, "seed") : 1;
            if (opt.seed) seed = *opt.seed;
            std::vector<std::size_t> axes;
            if (cfg.contains("axes"))
                for (auto a : get_as<std::vector<std::size_t>>(cfg, "axes")) {
                    if (a < 1) throw InvalidInput("axes are 1-based");
                    axes.push_back(a - 1);
                }
            if (command == "cube-svg") {
                require_format({"svg"});
                if (axes.empty() && shape.L.rows == 2) axes = {0, 1};
                if (axes.size() != 2) throw InvalidInput("cube-svg needs exactly two axes");
            } else {
                require_format({"csv", "json"});
            }
            const auto h = mc_histogram(cube, shape.L, axes, bins, samples, seed);
            res.summary = command + ": " + std::to_string(h.cell_count()) + " bins, total " + std::to_string(h.total());
            if (format == "svg") {
                res.artifact = histogram_svg(h);
            } else if (format == "csv") {
                res.artifact = h.to_csv();
            } else {
                std::vector<std::size_t> ax1;
                for (auto a : h.axes) ax1.push_back(a + 1);
                data["axes"] = ax1;
                data["lo"] = h.lo;
                data["hi"] = h.hi;
                data["bins"] = h.bins;
                data["samples"] = samples;
                data["seed"] = seed;
                data["values"] = h.values;
            }
        }
    }

    if (opt.echo_word) {
        data["auto_words"] = res.words;
        if (!res.words.empty()) {
            std::string ws;
            for (const auto& b : res.words) ws += (ws.empty() ? "" : " | ") + word_string(b.get<Word>());
            res.summary += " [words: " + ws + "]";
        }
    }
    res.format = format;
    if (res.artifact.empty() && format == "json") res.artifact = data.dump(2) + "\n";
    if (res.artifact.empty()) throw InvalidInput("format '" + format + "' is not available for command '" + command + "'");
    return res;
}

} // namespace fbs
