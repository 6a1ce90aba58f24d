#include "orthant/report.hpp"

#include "orthant/coxeter.hpp"
#include "orthant/critical.hpp"
#include "orthant/errors.hpp"
#include "orthant/nodal.hpp"
#include "orthant/spectral.hpp"
#include "orthant/walkgroup.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>

namespace orthant {

using json = nlohmann::ordered_json;

std::string tool_version() { return "0.1.0"; }

namespace {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::domain: return "domain";
        case ErrorKind::numeric: return "numeric";
        case ErrorKind::budget: return "budget";
        case ErrorKind::unsupported: return "unsupported";
    }
    return "internal";
}

void run_section(json& sections, const char* name, const std::function<void(json&)>& body) {
    json s;
    s["ok"] = true;
    try {
        body(s);
    } catch (const Error& e) {
        s = json::object();
        s["ok"] = false;
        s["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
    } catch (const std::exception& e) {
        s = json::object();
        s["ok"] = false;
        s["error"] = {{"kind", "internal"}, {"message", e.what()}};
    }
    sections[name] = std::move(s);
}

void skip_section(json& sections, const char* name, const std::string& needs) {
    sections[name] = {{"ok", false},
                      {"error", {{"kind", "skipped"}, {"message", "requires the " + needs}}}};
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json mat_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

json int_json(const Int& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

json model_json(const WalkModel& m) {
    json j;
    j["name"] = m.name;
    j["dim"] = m.dim;
    j["steps"] = m.steps;
    json w = json::array();
    for (const Rat& r : m.weights) w.push_back(rat_str(r));
    j["weights"] = w;
    return j;
}

json pair_order_json(const PairOrder& p) {
    json j;
    switch (p.kind) {
        case PairOrder::Kind::finite:
            j["kind"] = "finite";
            j["order"] = p.m;
            break;
        case PairOrder::Kind::infinite: j["kind"] = "infinite"; break;
        case PairOrder::Kind::inconclusive: j["kind"] = "inconclusive"; break;
    }
    j["detail"] = p.detail;
    return j;
}

json witness_json(const FixedPointWitness& w) {
    return {{"pair", {w.i, w.j}},
            {"point", vec_json(w.x)},
            {"eigenvalue", {w.lambda.real(), w.lambda.imag()}},
            {"modulus_deviation", w.deviation}};
}

json classification_json(const Classification& cls) {
    json j;
    j["conclusive"] = cls.conclusive;
    if (!cls.conclusive) j["reason"] = cls.reason;
    j["finite"] = cls.finite;
    if (cls.conclusive) {
        j["name"] = cls.name;
        if (cls.finite) {
            j["order"] = int_json(cls.order);
            j["reflections"] = int_json(cls.reflections);
        }
    }
    json comps = json::array();
    for (const ComponentType& c : cls.components) {
        json cj = {{"name", c.name}, {"nodes", c.nodes}, {"finite", c.finite}};
        if (c.finite) {
            cj["order"] = int_json(c.order);
            cj["reflections"] = int_json(c.reflections);
        }
        comps.push_back(std::move(cj));
    }
    j["components"] = comps;
    return j;
}

const char* conclusion_name(GvsHReport::Conclusion c) {
    switch (c) {
        case GvsHReport::Conclusion::isomorphic: return "isomorphic";
        case GvsHReport::Conclusion::g_infinite: return "g_infinite";
        case GvsHReport::Conclusion::both_infinite: return "both_infinite";
        case GvsHReport::Conclusion::bounded: return "bounded";
        case GvsHReport::Conclusion::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

json nodal_json(const NodalResult& nr) {
    json j;
    j["is_nodal"] = nr.is_nodal;
    if (nr.is_nodal) {
        j["coxeter_type"] = nr.coxeter_type;
        j["group_name"] = nr.group_name;
        j["group_order"] = int_json(nr.group_order);
        j["reflection_count"] = nr.k;
        j["lambda1"] = nr.lambda1;
        j["alpha"] = nr.alpha;
    } else {
        j["reason"] = nr.failure_reason;
    }
    return j;
}

} // namespace

json analyze_model(const WalkModel& m, const ReportOptions& opts) {
    json r;
    r["schema_version"] = kSchemaVersion;
    r["tool"] = "orthant " + tool_version();
    r["seed"] = opts.seed;
    r["model"] = model_json(m);
    json sections = json::object();

    run_section(sections, "window_certificate", [&](json& s) {
        H1Result h = check_h1(m);
        s["certified_on_window"] = h.ok;
        s["box"] = 10;
        s["note"] = "mutual reachability of all small lattice points inside the window; "
                    "a certificate for the tested window, not a global proof";
        if (!h.ok) {
            s["witness"] = h.witness;
            s["reason"] = h.reason;
        }
    });

    StepFn f = StepFn::from(m);
    std::optional<CriticalPoint> cp;
    run_section(sections, "critical", [&](json& s) {
        cp = critical_point(f);
        s["x0"] = vec_json(cp->x);
        s["rho"] = cp->rho;
        s["newton_iterations"] = cp->iterations;
        s["gradient_norm"] = inf_norm(f.gradient(cp->x));
    });

    std::optional<Mat> delta;
    std::optional<AngleGeometry> geo;
    if (!cp) {
        skip_section(sections, "covariance", "critical section");
    } else {
        run_section(sections, "covariance", [&](json& s) {
            delta = covariance(f, cp->x);
            geo = angle_geometry(*delta);
            s["matrix"] = mat_json(*delta);
            s["wall_angles"] = mat_json(geo->wall_angles);
            json normals = json::array();
            for (const Vec& u : geo->normals) normals.push_back(vec_json(u));
            s["normals"] = normals;
        });
    }

    std::optional<WalkMaps> wm;
    std::vector<Mat> gens;
    if (!cp) {
        skip_section(sections, "form_invariance", "critical section");
    } else {
        run_section(sections, "form_invariance", [&](json& s) {
            wm = walk_maps(m);
            gens = jacobian_generators(*wm, cp->x);
            Mat h = f.hessian(cp->x);
            double worst = 0.0;
            for (const Mat& g : gens) {
                worst = std::max(worst, isometry_residual(g, h));
                worst = std::max(worst, inf_norm(g * g - Mat::identity(m.dim)));
            }
            s["max_residual"] = worst;
            s["tolerance"] = 1e-8;
            s["pass"] = worst < 1e-8;
            s["note"] = "substitution Jacobians at the critical point are involutions "
                        "preserving the Hessian form";
        });
    }

    std::optional<Classification> cls;
    std::optional<InfiniteTest> itest;
    std::string h_verdict = "inconclusive";
    if (!delta) {
        skip_section(sections, "reflection_group", "covariance section");
    } else {
        run_section(sections, "reflection_group", [&](json& s) {
            CoxeterDiagram dia = build_diagram(*delta);
            json edges = json::array();
            for (int i = 0; i < dia.rank; ++i)
                for (int j = i + 1; j < dia.rank; ++j) {
                    const EdgeLabel& e = dia.at(i, j);
                    json ej = {{"pair", {i, j}}, {"cosine", e.cosine}};
                    if (e.kind == EdgeLabel::Kind::finite) {
                        ej["angle"] = (e.k == 1 ? std::string("pi/") : std::to_string(e.k) + "pi/") +
                                      std::to_string(e.m);
                        ej["m"] = e.m;
                        ej["k"] = e.k;
                    } else {
                        ej["angle"] = "unrecognized";
                    }
                    edges.push_back(std::move(ej));
                }
            s["edges"] = edges;
            s["chamber_shaped"] = dia.chamber_shaped();

            cls = classify(dia);
            s["classification"] = classification_json(*cls);

            itest = infinite_reflection_test(*delta);
            json it;
            it["applicable"] = itest->applicable;
            if (itest->applicable && itest->witness) {
                it["witness_pair"] = {itest->wi, itest->wj};
                it["witness_value"] = itest->value;
            }
            s["inadmissible_cosine_test"] = it;

            json evidence = json::array();
            std::string verdict = "inconclusive";
            if (cls->conclusive && cls->finite) {
                verdict = "finite";
                evidence.push_back("diagram components match finite types: " + cls->name);
                RootClosure rc = generate_roots(geo->normals);
                if (rc.complete) {
                    s["root_count"] = rc.roots.size() / 2;
                    evidence.push_back("root-system closure stabilized at " +
                                       std::to_string(rc.roots.size() / 2) + " reflections");
                    if (Int(static_cast<long>(rc.roots.size() / 2)) != cls->reflections)
                        fail_numeric("root closure disagrees with the diagram classification");
                }
            } else if (cls->conclusive && !cls->finite) {
                verdict = "infinite";
                evidence.push_back("diagram contains a component of no finite type");
            } else if (itest->proves_infinite()) {
                verdict = "infinite";
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", itest->value);
                evidence.push_back("indecomposable system with covariance entry " +
                                   std::string(buf) + " outside the admissible finite set");
            } else {
                // Exact escape hatch for unrecognized labels: a wall pair whose
                // angle is an irrational multiple of pi spans an infinite
                // dihedral subgroup.
                for (int i = 0; i < dia.rank && verdict == "inconclusive"; ++i)
                    for (int j = i + 1; j < dia.rank; ++j) {
                        const EdgeLabel& e = dia.at(i, j);
                        if (e.kind != EdgeLabel::Kind::unrecognized) continue;
                        PairOrder po = pair_order(e.cosine);
                        if (po.kind == PairOrder::Kind::infinite) {
                            verdict = "infinite";
                            evidence.push_back("walls " + std::to_string(i) + "," +
                                               std::to_string(j) +
                                               " meet at an irrational multiple of pi (" +
                                               po.detail + ")");
                            break;
                        }
                    }
                if (verdict == "inconclusive") evidence.push_back(cls->reason);
            }
            s["verdict"] = verdict;
            s["evidence"] = evidence;
            h_verdict = verdict;
        });
    }

    if (!wm || !delta) {
        skip_section(sections, "substitution_group", "form_invariance and covariance sections");
    } else {
        run_section(sections, "substitution_group", [&](json& s) {
            std::optional<Int> h_order;
            if (cls && cls->conclusive && cls->finite) h_order = cls->order;
            bool h_infinite = h_verdict == "infinite";

            ScanResult scan = fixed_point_scan(*wm, ScanGrid::default_grid());
            GvsHReport rep = g_vs_h_report(*wm, *delta, h_order, h_infinite, scan, opts.g_order,
                                           opts.g_min_normal, opts.seed);
            std::string grid = "default";
            if (rep.conclusion == GvsHReport::Conclusion::bounded ||
                rep.conclusion == GvsHReport::Conclusion::inconclusive) {
                scan = fixed_point_scan(*wm, ScanGrid::extended_grid());
                rep = g_vs_h_report(*wm, *delta, h_order, h_infinite, scan, opts.g_order,
                                    opts.g_min_normal, opts.seed);
                grid = "extended";
            }
            s["conclusion"] = conclusion_name(rep.conclusion);
            s["route"] = rep.route;
            s["scan_grid"] = grid;
            s["scan_fixed_points"] = scan.fixed_points;
            s["scan_truncated"] = scan.truncated;

            json pairs = json::array();
            for (const PairEntry& p : rep.pairs) {
                json pj = {{"pair", {p.i, p.j}}, {"angle", pair_order_json(p.angle)}};
                if (p.order > 0) pj["probed_order"] = p.order;
                pairs.push_back(std::move(pj));
            }
            s["pairs"] = pairs;
            if (rep.k_finite) s["pair_coxeter_order"] = int_json(rep.k_order);
            json ws = json::array();
            for (const FixedPointWitness& w : rep.witnesses) ws.push_back(witness_json(w));
            s["witnesses"] = ws;

            GroupClosure imj = matrix_group_closure(gens);
            json cj;
            cj["complete"] = imj.complete;
            if (imj.complete)
                cj["order"] = imj.order();
            else
                cj["cap"] = 20000;
            s["jacobian_image_closure"] = cj;

            json evidence = json::array();
            evidence.push_back(rep.route);
            if (imj.complete)
                evidence.push_back("Jacobian image closed with " + std::to_string(imj.order()) +
                                   " elements");
            s["evidence"] = evidence;
        });
    }

    if (!geo) {
        skip_section(sections, "nodal", "covariance section");
    } else {
        run_section(sections, "nodal", [&](json& s) {
            NodalResult nr = classify_nodal(*geo);
            json nj = nodal_json(nr);
            for (auto& [k, v] : nj.items()) s[k] = v;
            if (nr.is_nodal) {
                s["evidence"] = json::array(
                    {"all wall angles are of the form pi/m",
                     "wall reflection group is finite of type " + nr.group_name,
                     "lowest spherical Dirichlet eigenvalue k(d-2+k) with k = " +
                         std::to_string(nr.k) + " reflection hyperplanes"});
            }
        });
    }

    r["sections"] = std::move(sections);
    return r;
}

json count_json(const CountTable& t) {
    json j;
    j["from"] = t.from;
    j["to"] = t.to;
    j["n_max"] = t.n_max;
    j["weighted"] = t.weighted;
    j["weight_denominator"] = int_json(t.denom);
    j["period"] = t.period;
    json vals = json::array();
    for (int n = 0; n <= t.n_max; ++n) vals.push_back(t.raw[n].get_str());
    j["numerators"] = vals;
    j["note"] = "value(n) = numerators[n] / weight_denominator^n";
    return j;
}

json fit_json(const AsymptoticFit& f) {
    json j;
    j["alpha_hat"] = f.alpha_hat;
    j["rho_hat"] = f.rho_hat;
    j["period"] = f.period;
    j["window"] = {f.window_lo, f.window_hi};
    j["points"] = f.points;
    j["alpha_spread"] = f.alpha_spread;
    j["rho_spread"] = f.rho_spread;
    return j;
}

std::string count_csv(const CountTable& t) {
    std::ostringstream out;
    out << "n,value\n";
    for (int n = 0; n <= t.n_max; ++n) out << n << ',' << rat_str(t.value(n)) << '\n';
    return out.str();
}

json verify_prediction(const WalkModel& m, const FitRequest& req, const ReportOptions& opts) {
    json r = analyze_model(m, opts);
    json& sections = r["sections"];

    run_section(sections, "prediction", [&](json& s) {
        const json& crit = sections["critical"];
        if (!crit["ok"].get<bool>()) fail_numeric("critical section failed; no growth constant");
        double rho = crit["rho"].get<double>();

        std::vector<long long> from = req.from.empty() ? std::vector<long long>(m.dim, 0)
                                                       : req.from;
        std::vector<long long> to = req.to.empty() ? std::vector<long long>(m.dim, 0) : req.to;
        int n = req.n_max;
        if (n <= 0) n = m.dim <= 2 ? 400 : (m.dim == 3 ? 300 : 100);

        CountOptions copts;
        copts.unweighted = req.unweighted;
        copts.threads = opts.threads;
        copts.budget_bytes = opts.budget_bytes;
        CountTable table = count_excursions(m, from, to, n, copts);
        s["count"] = count_json(table);
        AsymptoticFit fit = estimate_asymptotics(table, rho);
        s["fit"] = fit_json(fit);

        const json& nodal = sections["nodal"];
        bool nodal_ok = nodal["ok"].get<bool>() && nodal["is_nodal"].get<bool>();
        s["tolerances"] = {{"alpha_rel", req.alpha_tol}, {"rho_rel", req.rho_tol},
                           {"note", "empirical choices; finite-n convergence rates are "
                                    "not covered by the asymptotic theory"}};
        s["rho_predicted"] = rho;
        s["rho_rel_err"] = std::abs(fit.rho_hat - rho) / rho;
        if (nodal_ok) {
            double alpha = nodal["alpha"].get<double>();
            s["alpha_predicted"] = alpha;
            s["alpha_rel_err"] = std::abs(fit.alpha_hat - alpha) / alpha;
            bool pass = s["alpha_rel_err"].get<double>() < req.alpha_tol &&
                        s["rho_rel_err"].get<double>() < req.rho_tol;
            s["pass"] = pass;
        } else {
            s["formula"] = "non-nodal: empirical exponent only";
        }
    });
    return r;
}

namespace {

void write_float(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
    if (!std::strpbrk(buf, ".eE")) out += ".0"; // keep float-ness on re-parse
}

void write_value(std::string& out, const json& j, bool pretty, int depth) {
    auto newline = [&](int d) {
        if (!pretty) return;
        out += '\n';
        out.append(static_cast<size_t>(2 * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += pretty ? ": " : ":";
                write_value(out, it.value(), pretty, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += pretty ? ", " : ",";
                first = false;
                write_value(out, e, pretty, depth + 1);
            }
            out += ']';
            return;
        }
        case json::value_t::number_float: write_float(out, j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

} // namespace

std::string render_report(const json& j, bool pretty) {
    std::string out;
    write_value(out, j, pretty, 0);
    out += '\n';
    return out;
}

} // namespace orthant
