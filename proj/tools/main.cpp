#include "orthant/counting.hpp"
#include "orthant/errors.hpp"
#include "orthant/model.hpp"
#include "orthant/nodal.hpp"
#include "orthant/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace orthant;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail_domain("cannot open output file: " + out_path);
    out << text;
}

int run_analyze(const std::string& file, const std::string& out, bool pretty,
                unsigned long seed, int threads, long long g_order, long long g_min_normal) {
    WalkModel m = load_model(file);
    ReportOptions opts;
    opts.seed = seed;
    opts.threads = threads;
    if (g_order >= 0) opts.g_order = g_order;
    opts.g_min_normal = g_min_normal;
    emit(render_report(analyze_model(m, opts), pretty), out);
    return 0;
}

int run_count(const std::string& file, const std::string& out, std::vector<long long> from,
              std::vector<long long> to, int n, bool fit, bool unweighted, bool pretty,
              int threads) {
    WalkModel m = load_model(file);
    if (fit) {
        FitRequest req;
        req.from = from;
        req.to = to;
        req.n_max = n;
        req.unweighted = unweighted;
        ReportOptions opts;
        opts.threads = threads;
        emit(render_report(verify_prediction(m, req, opts), pretty), out);
        return 0;
    }
    CountOptions opts;
    opts.unweighted = unweighted;
    opts.threads = threads;
    emit(count_csv(count_excursions(m, from, to, n, opts)), out);
    return 0;
}

int run_catalog(int dim, const std::string& out) {
    std::ostringstream text;
    text << "angles\ttype\treflections\tlambda1\tnote\n";
    for (const CatalogRow& row : catalog_tuples(dim)) {
        text << row.angles << '\t' << row.type << '\t' << row.k_expr << '\t' << row.lambda_expr;
        text << '\t' << (row.note.empty() ? "-" : row.note) << '\n';
    }
    emit(text.str(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical geometry, reflection groups, and exact excursion asymptotics\n"
                 "for weighted small-step walks confined to the nonnegative orthant"};
    app.require_subcommand(1);

    std::string file, out;
    bool pretty = false;
    unsigned long seed = 0;
    int threads = 1;
    long long g_order = -1, g_min_normal = 2;

    CLI::App* an = app.add_subcommand("analyze", "full analysis report for a model file");
    an->add_option("file", file, "model JSON file")->required();
    an->add_option("--out", out, "write the report here instead of stdout");
    an->add_flag("--pretty", pretty, "indented report");
    an->add_option("--seed", seed, "seed for the randomized probes (default 0)");
    an->add_option("--threads", threads, "worker threads for heavy sections");
    an->add_option("--g-order", g_order,
                   "externally known order of the substitution group, if any");
    an->add_option("--g-min-normal", g_min_normal,
                   "known lower bound on the index of a proper normal subgroup (default 2)");

    std::vector<long long> from, to;
    int n = 0, dim = 0;
    bool fit = false, unweighted = false;

    CLI::App* ct = app.add_subcommand("count", "exact excursion counts e(P,Q;n)");
    ct->add_option("file", file, "model JSON file")->required();
    ct->add_option("--from", from, "start point, comma separated")->required()->delimiter(',');
    ct->add_option("--to", to, "end point, comma separated")->required()->delimiter(',');
    ct->add_option("--n", n, "maximum walk length")->required();
    ct->add_flag("--fit", fit, "add the asymptotic fit and prediction check (JSON output)");
    ct->add_flag("--unweighted", unweighted, "count paths instead of weighted excursions");
    ct->add_flag("--pretty", pretty, "indented JSON when --fit is set");
    ct->add_option("--out", out, "write the table/report here instead of stdout");
    ct->add_option("--threads", threads, "worker threads for the layer transitions");

    CLI::App* cat = app.add_subcommand("catalog", "admissible wall-angle catalog for small d");
    cat->add_option("--dim", dim, "ambient dimension (2, 3, or 4)")->required();
    cat->add_option("--out", out, "write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (an->parsed())
            return run_analyze(file, out, pretty, seed, threads, g_order, g_min_normal);
        if (ct->parsed())
            return run_count(file, out, from, to, n, fit, unweighted, pretty, threads);
        return run_catalog(dim, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::parse ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
