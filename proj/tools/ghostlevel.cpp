// ghostlevel — exact certificates for levels, ghost lengths, Tor/Ext and
// shriek maps of polynomial classifying-space models.
//
// Subcommands run a (group × n × characteristic) grid, print one report
// line per cell and write one self-contained certificate file per cell.
// `verify` re-checks any emitted certificate from its raw matrices.
// Exit codes: 0 success, 1 verification failure, 2 usage/catalog error.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ghl/certio.hpp"

using namespace ghl;

namespace {

struct Options {
    std::vector<std::string> groups;
    std::string n_spec = "2";
    std::vector<std::string> chars = {"0"};
    int D = 60;
    bool D_set = false;
    uint64_t seed = 1;
    int trials = 100;
    std::string out_dir = "certs";
    std::string catalog_path;
    std::string config_path;
    int jobs = 1;
};

std::vector<int> parse_n_spec(const std::string& s) {
    std::vector<int> out;
    auto dots = s.find("..");
    if (dots != std::string::npos) {
        int a = std::stoi(s.substr(0, dots));
        int b = std::stoi(s.substr(dots + 2));
        for (int k = a; k <= b; ++k) out.push_back(k);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw catalog_error("empty n specification");
    return out;
}

// config file: `key = value` lines, same keys as the flags
void apply_config_file(Options& o) {
    std::ifstream in(o.config_path);
    if (!in) throw catalog_error("cannot open config file: " + o.config_path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto e = s.find_last_not_of(" \t");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "group" || key == "groups") {
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) o.groups.push_back(item);
        } else if (key == "n") {
            o.n_spec = val;
        } else if (key == "char" || key == "chars") {
            o.chars.clear();
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) o.chars.push_back(item);
        } else if (key == "D") {
            o.D = std::stoi(val);
            o.D_set = true;
        } else if (key == "seed") {
            o.seed = std::stoull(val);
        } else if (key == "trials") {
            o.trials = std::stoi(val);
        } else if (key == "out") {
            o.out_dir = val;
        } else if (key == "catalog") {
            o.catalog_path = val;
        } else if (key == "jobs") {
            o.jobs = std::stoi(val);
        } else {
            throw catalog_error("unknown config key: " + key);
        }
    }
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        if (std::isalnum((unsigned char)c)) out += c;
    return out;
}

struct Cell {
    SpaceModel model;
    FieldSpec field;
    int n = 1;
};

struct CellResult {
    std::string line;
    bool ok = true;
    Json certificate;
    std::string file_name;
};

const Catalog& catalog_for(const Options& o) {
    static Catalog user;
    if (!o.catalog_path.empty()) {
        user = Catalog::load_file(o.catalog_path);
        return user;
    }
    return Catalog::builtin();
}

std::vector<Cell> build_grid(const Options& o, bool needs_n) {
    if (o.groups.empty()) throw catalog_error("no --group given");
    const auto& cat = catalog_for(o);
    std::vector<int> ns = needs_n ? parse_n_spec(o.n_spec) : std::vector<int>{1};
    std::vector<Cell> cells;
    for (const auto& g : o.groups)
        for (const auto& ch : o.chars) {
            FieldSpec fs = FieldSpec::parse(ch);
            const auto& m = cat.lookup(g, fs);  // throws a clean diagnostic
            for (int n : ns) {
                int maxdeg = *std::max_element(m.degrees.begin(), m.degrees.end());
                int need = 2 * maxdeg * std::max(1, n);
                if (o.D < need)
                    throw catalog_error(g + " at n=" + std::to_string(n) + " needs D >= " +
                                        std::to_string(need) + " (got " + std::to_string(o.D) +
                                        ")");
                cells.push_back({m, fs, n});
            }
        }
    return cells;
}

CertConfig cell_config(const Cell& c, const Options& o) {
    CertConfig cfg;
    cfg.group = c.model.name;
    cfg.degrees = c.model.degrees;
    cfg.lie_dim = c.model.lie_dim;
    cfg.field = c.field;
    cfg.n = c.n;
    cfg.D = o.D;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    return cfg;
}

std::string cell_stamp(const std::string& kind, const Cell& c) {
    return kind + "_" + sanitize(c.model.name) + "_n" + std::to_string(c.n) + "_c" +
           std::to_string(c.field.p) + ".json";
}

template <class Fn>
int run_grid(const Options& o, const std::vector<Cell>& cells, Fn&& run_cell) {
    std::vector<CellResult> results(cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= cells.size()) return;
            try {
                results[k] = run_cell(cells[k]);
            } catch (const std::exception& e) {
                results[k].ok = false;
                results[k].line = cells[k].model.name + ": error: " + e.what();
            }
        }
    };
    int jobs = std::max(1, o.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    bool all_ok = true;
    std::filesystem::create_directories(o.out_dir);
    for (auto& r : results) {
        std::cout << r.line << "\n";
        if (!r.file_name.empty()) {
            auto path = (std::filesystem::path(o.out_dir) / r.file_name).string();
            write_certificate_atomic(path, r.certificate);
            std::cout << "  wrote " << path << "\n";
        }
        all_ok = all_ok && r.ok;
    }
    return all_ok ? 0 : 1;
}

int cmd_level(const Options& o) {
    auto cells = build_grid(o, true);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto base = model_algebra(c.model, c.field, o.D);
            auto lvl = level_bounds(f, base, c.n);
            std::ostringstream os;
            os << c.model.name << " n=" << c.n << " " << c.field.name() << ": level in ["
               << lvl.lower << ", " << lvl.upper << "]"
               << (lvl.exact ? " exact" : " (interval)") << ", pd=" << lvl.pd
               << ", formula=" << lvl.formula_value;
            r.line = os.str();
            // exit nonzero iff exact and off the formula
            r.ok = !(lvl.exact && lvl.lower != lvl.formula_value);
            r.certificate = emit_level(f, cfg, lvl);
            r.file_name = cell_stamp("level", c);
        });
        return r;
    });
}

int cmd_tor(const Options& o) {
    auto cells = build_grid(o, true);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto base = model_algebra(c.model, c.field, o.D);
            auto tower = diagonal_tower(f, base, c.n, false);
            auto tor = tor_trivial(f, tower);
            std::ostringstream os;
            os << c.model.name << " n=" << c.n << " " << c.field.name()
               << ": Tor total dim = " << tor.total_dim
               << ", total-degree series = " << tor.total_degree.str();
            r.line = os.str();
            r.certificate = emit_tor(f, cfg, tor, tower);
            r.file_name = cell_stamp("tor", c);
        });
        return r;
    });
}

int cmd_ext(const Options& o) {
    auto cells = build_grid(o, true);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto comp = ext_computation(f, c.field, c.model.degrees, o.D, c.n);
            const auto& ext = comp.report;
            std::ostringstream os;
            os << c.model.name << " n=" << c.n << " " << c.field.name()
               << ": Ext one-dimensional at total degree " << ext.generator_total_degree
               << (ext.concentrated ? " (concentrated, zero elsewhere up to " +
                                          std::to_string(ext.zero_certified_up_to) + ")"
                                    : " (NOT concentrated)");
            r.line = os.str();
            r.ok = ext.concentrated && ext.module_dims_match &&
                   ext.generator_dims.total() == 1 &&
                   ext.generator_dims.at(ext.generator_total_degree) == 1 &&
                   ext.zero_certified_up_to >= o.D;
            r.certificate = emit_ext(f, cfg, ext);
            r.file_name = cell_stamp("ext", c);
        });
        return r;
    });
}

int cmd_ghost_chain(const Options& o) {
    auto cells = build_grid(o, true);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto base = model_algebra(c.model, c.field, o.D);
            auto tower = diagonal_tower(f, base, c.n, true);
            auto chain = ghost_chain(f, tower, /*per_generator=*/false);
            std::ostringstream os;
            os << c.model.name << " n=" << c.n << " " << c.field.name() << ": "
               << chain.links.size() << " ghosts, composite degree "
               << chain.composite_total_degree
               << (chain.composite_nonzero ? ", nonzero (obstruction at internal degree " +
                                                 std::to_string(chain.obstruction.tgt_internal) +
                                                 ")"
                                           : ", VANISHES");
            r.line = os.str();
            r.ok = chain.links_verified && chain.links_ghost && chain.composite_nonzero;
            r.certificate = emit_ghost_chain(f, cfg, chain, tower);
            r.file_name = cell_stamp("ghostchain", c);
        });
        return r;
    });
}

int cmd_loop(const Options& o) {
    auto cells = build_grid(o, false);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto base = model_algebra(c.model, c.field, o.D);
            auto L = loop_module(f, base);
            auto rep = loop_ghost_certificate(f, base, L.module, o.trials, o.seed);
            std::ostringstream os;
            os << c.model.name << " " << c.field.name() << ": loop model "
               << (rep.refused ? "NOT free" : "free") << ", " << rep.trials.size() << " trials, "
               << (rep.all_null_homotopic ? "all null-homotopic" : "FAILURES");
            r.line = os.str();
            r.ok = !rep.refused && rep.all_null_homotopic;
            r.certificate = emit_loop(f, cfg, rep);
            r.file_name = cell_stamp("loop", c);
        });
        return r;
    });
}

int cmd_em(const Options& o) {
    auto cells = build_grid(o, true);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto base = model_algebra(c.model, c.field, o.D);
            auto rep = em_collapse_check(f, base, c.n);
            std::ostringstream os;
            os << c.model.name << " n=" << c.n << " " << c.field.name() << ": collapse count "
               << (rep.ok ? "matches" : "MISMATCH at degree " + std::to_string(rep.first_mismatch))
               << " up to degree " << rep.compare_up_to;
            r.line = os.str();
            r.ok = rep.ok;
            r.certificate = emit_em(cfg, rep);
            r.file_name = cell_stamp("em", c);
        });
        return r;
    });
}

int cmd_transgression(const Options& o) {
    auto cells = build_grid(o, false);
    return run_grid(o, cells, [&](const Cell& c) {
        CellResult r;
        auto cfg = cell_config(c, o);
        with_field(c.field, [&](auto f) {
            auto base = model_algebra(c.model, c.field, o.D);
            auto rep = transgression_check(f, base);
            std::ostringstream os;
            os << c.model.name << " " << c.field.name() << ": Tor series "
               << rep.computed.str() << (rep.ok ? " (as expected)" : " UNEXPECTED");
            r.line = os.str();
            r.ok = rep.ok;
            r.certificate = emit_transgression(cfg, rep);
            r.file_name = cell_stamp("transgression", c);
        });
        return r;
    });
}

int cmd_verify(const std::vector<std::string>& files) {
    bool all_ok = true;
    for (const auto& path : files) {
        auto out = verify_certificate_file(path);
        std::cout << path << ": " << (out.ok ? "OK" : "FAILED") << "\n";
        for (const auto& f : out.failures) std::cout << "  failed: " << f << "\n";
        all_ok = all_ok && out.ok;
    }
    return all_ok ? 0 : 1;
}

int cmd_catalog(const Options& o) {
    const auto& cat = catalog_for(o);
    for (const auto& m : cat.entries()) {
        std::cout << m.name << "  degrees=";
        for (size_t i = 0; i < m.degrees.size(); ++i)
            std::cout << (i ? "," : "") << m.degrees[i];
        std::cout << "  dim=" << m.lie_dim << "  chars=" << m.chars.str() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact level / ghost-length / shriek-map certificates for polynomial "
                 "classifying-space models"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&](CLI::App* sub, bool needs_n) {
        sub->add_option("--group", o.groups, "group name(s) from the catalog");
        if (needs_n) sub->add_option("--n", o.n_spec, "n value, list or range (e.g. 2..4)");
        sub->add_option("--char", o.chars, "characteristic(s): 0 or a prime");
        sub->add_option("--D", o.D, "truncation degree")->each([&](const std::string&) {
            o.D_set = true;
        });
        sub->add_option("--seed", o.seed, "seed for randomized suites");
        sub->add_option("--trials", o.trials, "trial count for randomized suites");
        sub->add_option("--out", o.out_dir, "certificate output directory");
        sub->add_option("--catalog", o.catalog_path, "user catalog file");
        sub->add_option("--config", o.config_path, "config file (key = value, flags override)");
        sub->add_option("--jobs", o.jobs, "concurrent grid cells");
    };

    auto* level = app.add_subcommand("level", "level bounds of the diagonal module");
    add_common(level, true);
    auto* tor = app.add_subcommand("tor", "Tor of the diagonal module against the ground field");
    add_common(tor, true);
    auto* ext = app.add_subcommand("ext", "Ext of the diagonal module into the ring");
    add_common(ext, true);
    auto* ghost = app.add_subcommand("ghost-chain", "chains of shriek ghosts and their composite");
    add_common(ghost, true);
    auto* loop = app.add_subcommand("loop", "loop-model freeness and random ghost triviality");
    add_common(loop, false);
    auto* em = app.add_subcommand("em", "collapse dimension count for the loop pullback");
    add_common(em, true);
    auto* trans = app.add_subcommand("transgression", "transgression dimension shadow");
    add_common(trans, false);
    std::vector<std::string> verify_files;
    auto* verify = app.add_subcommand("verify", "re-check emitted certificates");
    verify->add_option("files", verify_files, "certificate files")->required();
    auto* cata = app.add_subcommand("catalog", "list the model catalog");
    cata->add_option("--catalog", o.catalog_path, "user catalog file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!o.config_path.empty()) {
            // flags already parsed override config values: reparse the
            // config first into a fresh Options, then overlay CLI values
            Options file_opts = o;
            apply_config_file(file_opts);
            // CLI-provided values win where they were given
            if (o.groups.empty()) o.groups = file_opts.groups;
            if (!level->count("--n") && !tor->count("--n") && !ext->count("--n") &&
                !ghost->count("--n") && !em->count("--n"))
                o.n_spec = file_opts.n_spec;
            if (o.chars == std::vector<std::string>{"0"} && file_opts.chars.size())
                o.chars = file_opts.chars;
            if (!o.D_set) o.D = file_opts.D;
            if (o.seed == 1) o.seed = file_opts.seed;
            if (o.trials == 100) o.trials = file_opts.trials;
            if (o.out_dir == "certs") o.out_dir = file_opts.out_dir;
            if (o.catalog_path.empty()) o.catalog_path = file_opts.catalog_path;
            if (o.jobs == 1) o.jobs = file_opts.jobs;
        }
        if (level->parsed()) return cmd_level(o);
        if (tor->parsed()) return cmd_tor(o);
        if (ext->parsed()) return cmd_ext(o);
        if (ghost->parsed()) return cmd_ghost_chain(o);
        if (loop->parsed()) return cmd_loop(o);
        if (em->parsed()) return cmd_em(o);
        if (trans->parsed()) return cmd_transgression(o);
        if (verify->parsed()) return cmd_verify(verify_files);
        if (cata->parsed()) return cmd_catalog(o);
    } catch (const catalog_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const malformed_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
