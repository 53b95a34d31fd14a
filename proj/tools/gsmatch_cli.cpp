// gsmatch: match two contours, score a dataset directory, or generate
// perturbed and synthetic datasets.
//
// Exit codes: 0 success, 1 processing failure, 2 bad input (usage error,
// unreadable file, empty dataset, unknown mode).

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gsmatch/gsmatch.hpp"

namespace fs = std::filesystem;
using namespace gsmatch;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::vector<std::string> overrides;  // key=value, applied after the config file
};

CostParams resolve_params(const Common& c) {
    CostParams p;
    try {
        if (!c.config.empty()) {
            if (!fs::exists(c.config)) throw InputError("config not found: " + c.config);
            p = load_params(c.config);
        }
        for (const auto& kv : c.overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InputError("--set expects key=value, got " + kv);
            set_param(p, std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
        }
        p.validate();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    return p;
}

Contour read_input(const std::string& path) {
    if (!fs::is_regular_file(path)) throw InputError("no such file: " + path);
    try {
        return load_contour(path);
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

Dataset read_dataset(const std::string& dir) {
    if (!fs::is_directory(dir)) throw InputError("no such directory: " + dir);
    try {
        Dataset d = load_dataset(dir);
        for (const auto& f : d.ignored) std::cerr << "warning: ignoring " << f << " (expected <class>-<instance>.<ext>)\n";
        return d;
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

std::ofstream open_out(const std::string& path) {
    const fs::path fp(path);
    if (fp.has_parent_path()) fs::create_directories(fp.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

int cmd_match(const Common& common, const std::string& a_path, const std::string& b_path, const std::string& svg,
              const std::string& out_path) {
    const CostParams p = resolve_params(common);
    const Contour ca = read_input(a_path);
    const Contour cb = read_input(b_path);
    const ShapeBundle a = ShapeBundle::build(ca, p);
    const ShapeBundle b = ShapeBundle::build(cb, p);
    const MatchResult r = match(a, b, p);
    const std::string report = report_string(r, a, b, p);
    if (out_path.empty()) {
        std::cout << report;
    } else {
        open_out(out_path) << report;
    }
    if (!svg.empty()) {
        auto out = open_out(svg);
        write_svg(out, r, a, b, RenderSpec{}, fs::path(a_path).stem().string() + " vs " + fs::path(b_path).stem().string());
    }
    return 0;
}

int cmd_retrieve(const Common& common, const std::string& dir, const std::string& out_path, std::string matrix_path,
                 const std::string& cache_dir, bool resume, int jobs, std::size_t top, double budget_mb) {
    const CostParams p = resolve_params(common);
    const Dataset d = read_dataset(dir);
    BenchOptions opt;
    opt.jobs = jobs;
    opt.cache_dir = cache_dir;
    opt.resume = resume;
    opt.dt_budget_bytes = static_cast<std::size_t>(budget_mb * 1024.0 * 1024.0);
    opt.log = [](const std::string& s) { std::cerr << s << '\n'; };

    const auto t0 = std::chrono::steady_clock::now();
    const DistanceMatrix dm = distance_matrix(d, p, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (matrix_path.empty() && !out_path.empty()) matrix_path = out_path + ".matrix.tsv";
    if (!matrix_path.empty()) {
        auto out = open_out(matrix_path);
        write_matrix(out, dm);
    }
    std::ostringstream report;
    write_report(report, summarize(dm, top));
    if (out_path.empty()) {
        std::cout << report.str();
    } else {
        open_out(out_path) << report.str();
        std::cout << report.str();
    }
    std::cerr << "elapsed_seconds=" << secs << '\n';
    return 0;
}

std::string instance_name(std::size_t k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03zu", k);
    return buf;
}

int cmd_perturb(const Common& common, const std::string& dir, const std::string& mode, std::uint64_t seed,
                const std::string& out_dir, std::size_t count) {
    if (mode != "occlude" && mode != "merge") throw InputError("unknown mode '" + mode + "' (occlude or merge)");
    if (out_dir.empty()) throw InputError("--out is required");
    const CostParams p = resolve_params(common);
    const Dataset d = read_dataset(dir);
    std::vector<std::pair<std::string, Contour>> shapes;
    std::size_t failures = 0;

    if (mode == "occlude") {
        for (std::size_t k = 0; k < d.size(); ++k) {
            const auto& e = d.entries[k];
            try {
                shapes.push_back({e.id, occlude(e.contour, seed * 1000003ULL + k, p).contour});
            } catch (const std::exception& ex) {
                ++failures;
                std::cerr << "warning: " << e.id << ": " << ex.what() << '\n';
            }
        }
    } else {
        std::map<std::string, std::vector<std::size_t>> by_class;
        for (std::size_t k = 0; k < d.size(); ++k) by_class[d.entries[k].label].push_back(k);
        if (by_class.size() < 2) throw InputError("merge needs at least two classes");
        std::vector<std::string> classes;
        for (const auto& [c, _] : by_class) classes.push_back(c);
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < count; ++k) {
            std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
            const std::size_t ca = pick(rng);
            std::size_t cb = pick(rng);
            while (cb == ca) cb = pick(rng);
            const auto& ia = by_class[classes[ca]];
            const auto& ib = by_class[classes[cb]];
            const auto& ea = d.entries[ia[std::uniform_int_distribution<std::size_t>(0, ia.size() - 1)(rng)]];
            const auto& eb = d.entries[ib[std::uniform_int_distribution<std::size_t>(0, ib.size() - 1)(rng)]];
            const std::uint64_t merge_seed = rng();
            try {
                shapes.push_back({ea.label + "+" + eb.label + "-" + instance_name(k),
                                  merge_shapes(ea.contour, eb.contour, merge_seed)});
            } catch (const std::exception& ex) {
                ++failures;
                std::cerr << "warning: merge " << ea.id << " + " << eb.id << ": " << ex.what() << '\n';
            }
        }
    }
    save_dataset(out_dir, shapes);
    std::cout << "mode=" << mode << "\nwritten=" << shapes.size() << "\nfailed=" << failures << '\n';
    return 0;
}

int cmd_synth(const std::string& class_list, int per_class, std::uint64_t seed, const std::string& out_dir) {
    if (out_dir.empty()) throw InputError("--out is required");
    std::vector<std::string> classes;
    std::stringstream in(class_list);
    for (std::string c; std::getline(in, c, ',');)
        if (!c.empty()) classes.push_back(c);
    if (classes.empty()) throw InputError("no classes given");
    std::vector<synth::LabeledContour> made;
    try {
        made = synth::make_dataset(classes, per_class, seed);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    std::vector<std::pair<std::string, Contour>> shapes;
    for (auto& e : made) shapes.push_back({e.id, std::move(e.contour)});
    save_dataset(out_dir, shapes);
    std::cout << "written=" << shapes.size() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contour matching with groups of segments"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "key=value parameter file");
        sub->add_option("--set", common.overrides, "override one parameter, key=value (repeatable)");
    };

    std::string a_path, b_path, svg, out, matrix, cache = ".gsmatch-cache", mode, dir;
    bool resume = false;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::size_t top = 40, count = 100;
    double budget_mb = 1536.0;

    auto* m = app.add_subcommand("match", "match two contour files and print the report");
    m->add_option("shape1", a_path)->required();
    m->add_option("shape2", b_path)->required();
    m->add_option("--svg", svg, "write the decomposition as SVG");
    m->add_option("--out", out, "write the report here instead of stdout");
    add_common(m);

    auto* r = app.add_subcommand("retrieve", "all-pairs matching over a dataset directory");
    r->add_option("dataset", dir)->required();
    r->add_option("--out", out, "report path (matrix goes to <out>.matrix.tsv)");
    r->add_option("--matrix", matrix, "distance matrix path");
    r->add_option("--cache", cache, "cache directory")->capture_default_str();
    r->add_flag("--resume", resume, "reuse finished pairs from the cache");
    r->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    r->add_option("--top", top, "bullseye window")->capture_default_str();
    r->add_option("--dt-budget-mb", budget_mb, "memory for resident distance transforms")->capture_default_str();
    add_common(r);

    auto* g = app.add_subcommand("perturb", "write an occluded or merged copy of a dataset");
    g->add_option("dataset", dir)->required();
    g->add_option("--mode", mode, "occlude or merge")->required();
    g->add_option("--seed", seed)->capture_default_str();
    g->add_option("--out", out, "output directory");
    g->add_option("--count", count, "merged shapes to generate")->capture_default_str();
    add_common(g);

    std::string class_list = "star,cross,house,flower,bone,fish";
    int per_class = 10;
    auto* s = app.add_subcommand("synth", "write a synthetic dataset of deformed class templates");
    s->add_option("--classes", class_list, "comma-separated class names")->capture_default_str();
    s->add_option("--per-class", per_class)->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--seed", seed)->capture_default_str();
    s->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (m->parsed()) return cmd_match(common, a_path, b_path, svg, out);
        if (r->parsed()) return cmd_retrieve(common, dir, out, matrix, cache, resume, jobs, top, budget_mb);
        if (g->parsed()) return cmd_perturb(common, dir, mode, seed, out, count);
        if (s->parsed()) return cmd_synth(class_list, per_class, seed, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
