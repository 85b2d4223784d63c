#include "basmajian/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "basmajian/errors.hpp"
#include "basmajian/holo_ifs.hpp"
#include "basmajian/io.hpp"
#include "basmajian/kernels.hpp"
#include "basmajian/locus.hpp"
#include "basmajian/schottky.hpp"
#include "basmajian/thermo.hpp"

namespace basmajian {

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Diverging: return 2;
        case ErrorKind::DegenerateConfiguration:
        case ErrorKind::BranchAmbiguity:
        case ErrorKind::ParabolicOrElliptic:
        case ErrorKind::NonLoxodromic:
        case ErrorKind::NoSignChange:
        case ErrorKind::NoConvergence: return 3;
        case ErrorKind::LostTrack: return 4;
    }
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

Preset preset_named(const std::string& name) {
    if (name == "gamma") return Preset::Gamma;
    if (name == "gamma-prime") return Preset::GammaPrime;
    throw std::invalid_argument("unknown loop preset: " + name);
}

std::string binary_word(const Word& w) {
    std::string s;
    for (int i = 0; i < w.size(); ++i) s += static_cast<char>('1' + w[i]);
    return s;
}

struct Options {
    std::string target, c = "-3", config, loop, out, svg, in, method = "pressure", pressure_csv;
    double eps = 1e-8, tol = 0.0, t = 0.0;
    int max_len = 0, dump_len = 10, steps = 512, depth = 0;
    bool swapped = false, alternate_root = false, all = false;
    LocusConfig locus;
};

void print_report(std::ostream& out, const SeriesReport& r) {
    out << "lhs: " << format_complex(r.lhs) << '\n'
        << "partial_sum: " << format_complex(r.partial_sum) << '\n'
        << "gap: " << format_double(r.gap()) << (r.modulo_two_pi_i ? " (mod 2 pi i)" : "") << '\n'
        << "lambda1: " << format_double(r.lambda1_estimate) << '\n'
        << "tail_bound: " << format_double(r.tail_bound) << '\n'
        << "depth: " << r.depth << '\n'
        << "converged: " << (r.converged ? "true" : "false") << '\n';
}

std::string gap_csv(const HoloIFS& ifs, int depth) {
    struct Row {
        Word w;
        Complex hi, lo, diff;
    };
    std::vector<Row> rows;
    serial::gap_series_levels(ifs, depth, 1.0, [&](const Word& w, Complex hi, Complex lo, Complex d, int) {
        rows.push_back({w, hi, lo, d});
    });
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.w < b.w; });
    std::ostringstream s;
    s << "length,word,endpoint1_re,endpoint1_im,endpoint2_re,endpoint2_im,abs_diff\n";
    for (const auto& r : rows)
        s << r.w.size() << ',' << binary_word(r.w) << ',' << format_double(r.hi.real()) << ','
          << format_double(r.hi.imag()) << ',' << format_double(r.lo.real()) << ','
          << format_double(r.lo.imag()) << ',' << format_double(std::abs(r.diff)) << '\n';
    return s.str();
}

MarkedRep schottky_target(const Options& o) {
    if (!o.config.empty()) return rep_from_json(nlohmann::json::parse(read_file(o.config)));
    PresetOptions po{o.alternate_root};
    return preset(preset_named(o.loop.empty() ? "gamma" : o.loop), o.t, po);
}

std::string resolve_target(const Options& o) {
    if (!o.target.empty()) return o.target;
    return (!o.config.empty() || !o.loop.empty()) ? "schottky" : "julia";
}

int cmd_identity(const Options& o, std::ostream& out) {
    std::string target = resolve_target(o);
    if (target == "schottky") {
        MarkedRep rep = schottky_target(o);
        SeriesReport r = evaluate_identity(rep, o.eps, o.max_len ? o.max_len : 30);
        out << "target: schottky\n";
        print_report(out, r);
        out << "all_terms_real_positive: "
            << (r.min_term_re > 0.0 && r.max_term_abs_im <= 1e-12 ? "true" : "false") << '\n';
        if (!o.out.empty()) {
            std::ostringstream s;
            s << "length,word,re,im,abs\n";
            for_each_term(rep, std::min(o.dump_len, r.depth), [&](const Word& w, Complex t) {
                s << w.size() << ',' << w.to_string(rep.language().alphabet) << ','
                  << format_double(t.real()) << ',' << format_double(t.imag()) << ','
                  << format_double(std::abs(t)) << '\n';
            });
            write_file(o.out, s.str());
        }
        return 0;
    }
    Complex c = parse_complex(o.c);
    if (target == "similarity") {
        SimilarityIFS ifs(c);
        SimilarityReport r = similarity_identity(ifs, o.max_len ? o.max_len : 20);
        out << "target: similarity c=" << format_complex(c) << '\n';
        print_report(out, r.series);
        out << "closed_form_partial: " << format_complex(r.closed_form_partial) << '\n'
            << "sum: " << format_complex(r.closed_form_sum) << '\n';
        if (!o.out.empty()) write_file(o.out, gap_csv(ifs, std::min(o.dump_len, r.series.depth)));
        return 0;
    }
    if (target != "julia") throw std::invalid_argument("unknown target: " + target);
    QuadraticIFS ifs(c, o.swapped);
    if (!escapes(c)) out << "warning: critical orbit did not escape; c may lie in the Mandelbrot set\n";
    SeriesReport r = julia_identity(ifs, o.eps, o.max_len ? o.max_len : 24);
    out << "target: julia c=" << format_complex(c) << (o.swapped ? " (swapped labels)" : "") << '\n';
    print_report(out, r);
    if (!o.out.empty()) write_file(o.out, gap_csv(ifs, std::min(o.dump_len, r.depth)));
    return 0;
}

int cmd_monodromy(const Options& o, std::ostream& out) {
    std::string name = o.loop.empty() ? "gamma" : o.loop;
    PresetOptions po{o.alternate_root};
    if (!o.config.empty()) {
        auto j = nlohmann::json::parse(read_file(o.config));
        name = j.value("preset", name);
        po.alternate_root = j.value("alternate_root", po.alternate_root);
    }
    LoopSpec loop = preset_loop(preset_named(name), o.steps, po);
    MonodromyResult res = continue_along(loop, o.max_len ? o.max_len : 8);
    const Alphabet& a = LanguageSpec::torus().alphabet;
    std::ostringstream s;
    s << "word,winding_integer,monodromy\n";
    long total = 0;
    for (const auto& t : res.terms) {
        total += 2 * t.winding;
        if (t.winding == 0 && !o.all) continue;
        s << t.word.to_string(a) << ',' << t.winding << ',' << 2 * t.winding << '\n';
    }
    s << "total,," << total << '\n';
    if (o.out.empty()) out << s.str();
    else write_file(o.out, s.str());
    return 0;
}

int cmd_dim(const Options& o, std::ostream& out) {
    std::string target = resolve_target(o);
    Complex c = parse_complex(o.c);
    std::unique_ptr<HoloIFS> ifs;
    if (target == "julia") ifs = std::make_unique<QuadraticIFS>(c);
    else if (target == "similarity") ifs = std::make_unique<SimilarityIFS>(c);
    else throw std::invalid_argument("dim supports julia and similarity targets");
    DimEstimate d;
    if (o.method == "pressure") {
        int n = o.depth ? o.depth : 12;
        d = bowen_dimension(*ifs, n, o.tol > 0 ? o.tol : 1e-12);
        if (!o.pressure_csv.empty()) {
            std::vector<double> ts;
            for (int k = 0; k <= 40; ++k) ts.push_back(0.05 * k);
            std::ostringstream s;
            s << "t,pressure,depth\n";
            for (const auto& p : pressure_curve(*ifs, ts, n).samples)
                s << format_double(p.t) << ',' << format_double(p.pressure) << ',' << p.depth << '\n';
            write_file(o.pressure_csv, s.str());
        }
    } else if (o.method == "levelsum") {
        d = levelsum_dimension(*ifs, o.depth ? o.depth : 16, o.tol > 0 ? o.tol : 1e-6);
    } else if (o.method == "cutout") {
        d = cutout_dimension(*ifs, o.depth ? o.depth : 16);
    } else {
        throw std::invalid_argument("unknown method: " + o.method);
    }
    out << nlohmann::json(d).dump() << '\n';
    return 0;
}

int cmd_locus(const Options& o, std::ostream& out) {
    LocusConfig cfg = o.locus;
    auto pts = trace_locus(cfg);
    std::string csv = locus_csv(pts);
    if (o.out.empty()) out << csv;
    else write_file(o.out, csv);
    if (!o.svg.empty()) write_file(o.svg, locus_svg(pts));
    return 0;
}

int cmd_plot(const Options& o, std::ostream&) {
    if (o.in.empty() || o.svg.empty()) throw std::invalid_argument("plot needs --in and --svg");
    write_file(o.svg, locus_svg(parse_locus_csv(read_file(o.in))));
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    configure_threads();
    Options o;
    CLI::App app{"Basmajian-type series identities on Cantor sets"};
    app.require_subcommand(1);

    auto add_c = [&](CLI::App* s) {
        s->add_option("--c", o.c, "quadratic or similarity parameter, e.g. -3 or 0.3+0.6i");
        s->add_option("--target", o.target, "julia | similarity | schottky")
            ->check(CLI::IsMember({"julia", "similarity", "schottky"}));
    };

    auto* identity = app.add_subcommand("identity", "evaluate an identity and its series");
    add_c(identity);
    identity->add_option("--config", o.config, "Schottky representation JSON");
    identity->add_option("--loop", o.loop, "preset representation: gamma | gamma-prime");
    identity->add_option("--t", o.t, "loop parameter for the preset");
    identity->add_option("--eps", o.eps, "tail bound threshold")->check(CLI::PositiveNumber);
    identity->add_option("--max-len", o.max_len, "maximum word length");
    identity->add_option("--out", o.out, "term CSV path");
    identity->add_option("--dump-len", o.dump_len, "longest word written to the term CSV");
    identity->add_flag("--swapped", o.swapped, "use the label-swapped quadratic system");
    identity->add_flag("--alternate-root", o.alternate_root, "smaller root x for the presets");

    auto* mono = app.add_subcommand("monodromy", "monodromy of terms around a loop");
    mono->add_option("--loop", o.loop, "gamma | gamma-prime");
    mono->add_option("--config", o.config, "loop JSON {\"preset\": ..., \"alternate_root\": ...}");
    mono->add_option("--steps", o.steps, "base loop steps")->check(CLI::PositiveNumber);
    mono->add_option("--max-len", o.max_len, "maximum word length");
    mono->add_option("--out", o.out, "CSV path (default stdout)");
    mono->add_flag("--all", o.all, "include words with zero monodromy");
    mono->add_flag("--alternate-root", o.alternate_root, "smaller root x");

    auto* dim = app.add_subcommand("dim", "dimension estimate as JSON");
    add_c(dim);
    dim->add_option("--method", o.method, "pressure | levelsum | cutout")
        ->check(CLI::IsMember({"pressure", "levelsum", "cutout"}));
    dim->add_option("--depth", o.depth, "period or word length");
    dim->add_option("--tol", o.tol, "root tolerance");
    dim->add_option("--pressure-csv", o.pressure_csv, "write the pressure curve (pressure method)");

    auto* locus = app.add_subcommand("locus", "trace the dimension-one locus along rays");
    locus->add_option("--rays", o.locus.rays)->check(CLI::PositiveNumber);
    locus->add_option("--r-min", o.locus.r_min);
    locus->add_option("--r-max", o.locus.r_max);
    locus->add_option("--tol", o.locus.tol)->check(CLI::PositiveNumber);
    locus->add_option("--depth", o.locus.depth);
    locus->add_option("--grid", o.locus.grid, "radii scanned before bisection");
    locus->add_option("--out", o.out, "CSV path (default stdout)");
    locus->add_option("--svg", o.svg, "SVG scatter path");

    auto* plot = app.add_subcommand("plot", "SVG scatter from a locus CSV");
    plot->add_option("--in", o.in, "locus CSV")->required();
    plot->add_option("--svg", o.svg, "SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*identity) return cmd_identity(o, out);
        if (*mono) return cmd_monodromy(o, out);
        if (*dim) return cmd_dim(o, out);
        if (*locus) return cmd_locus(o, out);
        if (*plot) return cmd_plot(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace basmajian
