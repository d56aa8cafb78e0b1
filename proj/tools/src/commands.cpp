#include "commands.hpp"

#include "checks.hpp"
#include "table.hpp"

#include "confnet/connmass.hpp"
#include "confnet/errors.hpp"
#include "confnet/mc_sim.hpp"
#include "confnet/pfc_analytic.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace confnet::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<OptionSpec> with_common(std::vector<OptionSpec> opts) {
    opts.push_back({"format", "csv", "output format: csv or json"});
    opts.push_back({"seed", "1", "64-bit master seed"});
    opts.push_back({"threads", "1", "worker threads (never changes results)"});
    return opts;
}

std::vector<OptionSpec> model_options(const std::string& model, const std::string& n) {
    return {
        {"model", model, "link model: siso, simo, miso, mimo, unitdisk"},
        {"m", "", "SIMO/MISO branches (list/range), or min(n_t, n_r) for mimo (default 2)"},
        {"n", n, "MIMO max(n_t, n_r) (list/range)"},
        {"radius", "1", "unit-disk radius"},
    };
}

std::vector<OptionSpec> prism_options(const std::string& side) {
    return {
        {"prism", "house", "prism preset: house or cube"},
        {"prism-file", "", "JSON prism {\"base\": [[x, y], ...], \"height\": h}; overrides --prism"},
        {"L", side, "preset side length"},
    };
}

std::vector<OptionSpec> concat(std::vector<OptionSpec> a, const std::vector<OptionSpec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool wants_json(const Params& p) {
    const std::string& f = p.text("format");
    if (f == "json") return true;
    if (f == "csv") return false;
    throw UsageError("--format must be csv or json, got '" + f + "'");
}

unsigned threads_of(const Params& p) {
    const int t = p.integer("threads");
    if (t < 1 || t > 1024) throw UsageError("--threads must lie in [1, 1024]");
    return static_cast<unsigned>(t);
}

std::string model_name(const Params& p) {
    std::string m = p.text("model");
    if (m == "unit-disk") m = "unitdisk";
    if (m != "siso" && m != "simo" && m != "miso" && m != "mimo" && m != "unitdisk") {
        throw UsageError("--model must be one of siso, simo, miso, mimo, unitdisk; got '" + m + "'");
    }
    return m;
}

std::vector<int> diversity_list(const Params& p) {
    const std::string m = model_name(p);
    if (m == "simo" || m == "miso") return p.text("m").empty() ? std::vector<int>{1} : p.int_list("m");
    if (m == "mimo") return p.int_list("n");
    return {1};
}

int single(const std::vector<int>& v, const char* name) {
    if (v.size() != 1) throw UsageError(std::string("--") + name + " must be a single value for this command");
    return v.front();
}

double mean_nodes(double rho, double volume) { return std::round(rho * volume); }

// ---------------------------------------------------------------- mass

CommandOutput cmd_mass(const Params& p) {
    const bool as_json = wants_json(p);
    const std::string name = model_name(p);
    const auto ks = diversity_list(p);
    const auto ds = p.int_list("d");
    const auto etas = p.real_list("eta");
    const auto betas = p.real_list("beta");

    Table t;
    t.columns = {"model",      "k",           "d",       "eta",     "beta",
                 "closed",     "quadrature",  "quad_abs_error",     "rel_gap",
                 "leading",    "ratio_to_leading"};
    for (int k : ks) {
        for (int d : ds) {
            for (double eta : etas) {
                for (double beta : betas) {
                    const ConnectionModel model = model_from(p, k, beta, eta, d);
                    const MassResult closed = mass_closed(model);
                    const MassResult quad = mass_quadrature(model);
                    double leading = kNaN;
                    try {
                        leading = mass_scaling_leading(model);
                    } catch (const CapabilityError&) {
                    }
                    t.add_row({name, k, d, number(eta), number(beta), number(closed.value), number(quad.value),
                               number(quad.est_abs_error), number(std::abs(closed.value - quad.value) / quad.value),
                               number(leading), number(closed.value / leading)});
                }
            }
        }
    }
    return {as_json ? dump(t.to_json()) : t.to_csv()};
}

// ----------------------------------------------------------------- pfc

json ledger_json(const std::vector<FeatureContribution>& ledger) {
    json arr = json::array();
    for (const auto& c : ledger) {
        arr.push_back({{"label", c.label},
                       {"kind", to_string(c.feature.kind)},
                       {"codim", c.feature.codim},
                       {"multiplicity", c.feature.multiplicity},
                       {"angle", c.feature.angle ? number(*c.feature.angle) : json(nullptr)},
                       {"V", number(c.weight())},
                       {"omega", number(c.feature.solid_angle)},
                       {"G", number(c.geometric_factor)},
                       {"rate", number(c.exponent_rate)},
                       {"density_power", c.density_power}});
    }
    return arr;
}

Table ledger_table(const std::vector<FeatureContribution>& ledger) {
    Table t;
    t.columns = {"label", "kind", "codim", "multiplicity", "angle", "V", "omega", "G", "rate", "density_power"};
    for (const json& row : ledger_json(ledger)) {
        std::vector<json> cells;
        for (const auto& col : t.columns) cells.push_back(row.at(col));
        t.add_row(std::move(cells));
    }
    return t;
}

ConnectionModel pipeline_model(const Params& p) {
    const int k = single(diversity_list(p), model_name(p) == "mimo" ? "n" : "m");
    return model_from(p, k, p.real("beta"), p.real("eta"), p.integer("d"));
}

CommandOutput cmd_pfc(const Params& p) {
    const bool as_json = wants_json(p);
    const RightPrism prism = prism_from(p);
    const ConnectionModel model = pipeline_model(p);
    const auto rhos = p.real_list("rho");
    const PfcCurve curve = assemble(prism, model, rhos);

    if (p.boolean("table")) {
        const Table t = ledger_table(curve.ledger);
        return {as_json ? dump(t.to_json()) : t.to_csv()};
    }

    Table t;
    t.columns = {"rho", "N", "p_fc_bulk", "p_fc_bulk_faces", "p_fc_bulk_faces_edges", "p_fc", "p_out"};
    for (const auto& c : curve.ledger) t.columns.push_back(c.label);
    t.columns.push_back("out_of_regime");
    for (const PfcBreakdown& b : curve.points) {
        std::vector<json> row = {number(b.rho),
                                 number(mean_nodes(b.rho, prism.volume())),
                                 number(b.p_fc_bulk()),
                                 number(b.p_fc_bulk_faces()),
                                 number(b.p_fc_bulk_faces_edges()),
                                 number(b.p_fc),
                                 number(b.p_out)};
        for (double term : b.terms) row.push_back(number(term));
        row.push_back(b.out_of_regime);
        t.add_row(std::move(row));
    }
    if (!as_json) return {t.to_csv()};
    json doc = {{"prism", prism_to_json(prism)},
                {"model", model.describe()},
                {"ledger", ledger_json(curve.ledger)},
                {"curve", t.to_json()}};
    return {dump(doc)};
}

// ------------------------------------------------------------ simulate

CommandOutput cmd_simulate(const Params& p) {
    const bool as_json = wants_json(p);
    const RightPrism prism = prism_from(p);
    const ConnectionModel model = pipeline_model(p);
    const auto rhos = p.real_list("rho");
    const int trials = p.integer("trials");
    if (trials < 1) throw UsageError("--trials must be >= 1");
    const std::uint64_t seed = p.u64("seed");

    std::optional<PfcCurve> analytic;
    try {
        analytic = assemble(prism, model, rhos);
    } catch (const CapabilityError&) {
        // Monte Carlo still runs; analytic columns stay empty.
    }

    Table t;
    t.columns = {"rho",           "N",           "trials",         "p_fc_hat",       "ci_low",       "ci_high",
                 "mean_isolated", "p_isolated_hat", "p_fc_analytic", "p_out_analytic", "out_of_regime"};
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        McConfig cfg = McConfig::from_density(rhos[i], model, prism, static_cast<std::size_t>(trials),
                                              derive_seed(seed, i));
        cfg.threads = threads_of(p);
        cfg.poisson_nodes = p.boolean("poisson");
        cfg.link_floor = p.real("link-floor");
        const McEstimate est = run_trials(cfg);
        std::vector<json> row = {number(rhos[i]),         cfg.node_count,           est.trials,
                                 number(est.p_fc_hat),    number(est.ci_low),       number(est.ci_high),
                                 number(est.mean_isolated), number(est.p_isolated_hat)};
        if (analytic) {
            const PfcBreakdown& b = analytic->points[i];
            row.push_back(number(b.p_fc));
            row.push_back(number(b.p_out));
            row.push_back(b.out_of_regime);
        } else {
            row.insert(row.end(), {nullptr, nullptr, nullptr});
        }
        t.add_row(std::move(row));
    }
    return {as_json ? dump(t.to_json()) : t.to_csv()};
}

// --------------------------------------------------------------- field

CommandOutput cmd_field(const Params& p) {
    const bool as_json = wants_json(p);
    const double rho = p.real("rho");
    if (rho < 0.0) throw UsageError("--rho must be >= 0");
    const bool planar = !p.text("square").empty();
    const std::string d_text = p.text("d");
    const int d = d_text.empty() ? (planar ? 2 : 3) : p.integer("d");
    const ConnectionModel model =
        model_from(p, single(diversity_list(p), model_name(p) == "mimo" ? "n" : "m"), p.real("beta"), p.real("eta"), d);
    const int g = p.text("grid").empty() ? (planar ? 200 : 40) : p.integer("grid");
    if (g < 1 || g > 4000) throw UsageError("--grid must lie in [1, 4000]");
    const auto gn = static_cast<std::size_t>(g);

    Engine eng(derive_seed(p.u64("seed"), 0));
    std::vector<Vec3> nodes;
    GridSpec grid;
    std::optional<RightPrism> prism;
    if (planar) {
        const double side = p.real("square");
        if (!(side > 0.0)) throw UsageError("--square must be > 0");
        const std::vector<Vec2> square = {{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}};
        nodes = sample_polygon(square, static_cast<std::size_t>(mean_nodes(rho, side * side)), eng);
        grid = {{0.0, 0.0, 0.0}, {side, side, 0.0}, gn, gn, 1};
    } else {
        prism = prism_from(p);
        nodes = sample_uniform(*prism, static_cast<std::size_t>(mean_nodes(rho, prism->volume())), eng);
        Vec2 lo = prism->base().front();
        Vec2 hi = lo;
        for (const Vec2& v : prism->base()) {
            lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
            hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
        }
        grid = {{lo.x, lo.y, 0.0}, {hi.x, hi.y, prism->height()}, gn, gn, gn};
    }
    const ScalarField field = connection_field(nodes, model, grid);

    Table t;
    t.columns = planar ? std::vector<std::string>{"x", "y", "value"} : std::vector<std::string>{"x", "y", "z", "value"};
    for (std::size_t k = 0; k < grid.nz; ++k) {
        for (std::size_t j = 0; j < grid.ny; ++j) {
            for (std::size_t i = 0; i < grid.nx; ++i) {
                const Vec3 x = grid.point(i, j, k);
                if (prism && !prism->contains(x, 1e-9)) continue;
                std::vector<json> row = {number(x.x), number(x.y)};
                if (!planar) row.push_back(number(x.z));
                row.push_back(number(field.at(i, j, k)));
                t.add_row(std::move(row));
            }
        }
    }
    if (!as_json) return {t.to_csv()};
    json pts = json::array();
    for (const Vec3& v : nodes) {
        pts.push_back(planar ? json::array({number(v.x), number(v.y)}) : json::array({number(v.x), number(v.y), number(v.z)}));
    }
    return {dump({{"nodes", pts}, {"field", t.to_json()}})};
}

// ------------------------------------------------------------ validate

CommandOutput cmd_validate(const Params& p) {
    const bool as_json = wants_json(p);
    std::vector<std::string> selected;
    if (p.text("check").empty()) {
        selected = check_names();
    } else {
        std::stringstream ss(p.text("check"));
        for (std::string name; std::getline(ss, name, ',');) {
            if (!is_check(name)) throw UsageError("unknown check '" + name + "'");
            selected.push_back(name);
        }
    }
    const bool perturb = p.boolean("perturb");

    Table t;
    t.columns = {"check", "passed", "metric", "tolerance", "detail"};
    bool all = true;
    for (const std::string& name : selected) {
        const CheckResult r = run_check(name, perturb, p.u64("seed"));
        all = all && r.passed;
        t.add_row({r.name, r.passed, number(r.metric), number(r.tolerance), r.detail});
    }
    return {as_json ? dump(t.to_json()) : t.to_csv(), all ? 0 : 4};
}

}  // namespace

ConnectionModel model_from(const Params& p, int k, double beta, double eta, int d) {
    const PathLossParams params{beta, eta, d};
    const std::string name = model_name(p);
    if (name == "siso") return ConnectionModel::siso(params);
    if (name == "simo" || name == "miso") return ConnectionModel::simo_miso(k, params);
    if (name == "mimo") {
        const int m = p.text("m").empty() ? 2 : p.integer("m");
        return ConnectionModel::mimo(m, k, params);
    }
    return ConnectionModel::unit_disk(p.real("radius"), params);
}

nlohmann::json prism_to_json(const RightPrism& prism) {
    json base = json::array();
    for (const Vec2& v : prism.base()) base.push_back({number(v.x), number(v.y)});
    return {{"base", base}, {"height", number(prism.height())}};
}

RightPrism prism_from_json(const nlohmann::json& j) {
    try {
        std::vector<Vec2> base;
        for (const auto& v : j.at("base")) {
            if (v.size() != 2) throw UsageError("prism base vertices must be [x, y] pairs");
            base.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        return RightPrism(std::move(base), j.at("height").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed prism JSON: ") + e.what());
    }
}

RightPrism prism_from(const Params& p) {
    const std::string& file = p.text("prism-file");
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw UsageError("cannot open prism file '" + file + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw UsageError("prism file '" + file + "': " + e.what());
        }
        return prism_from_json(j);
    }
    return prism_preset(p.text("prism"), p.real("L"));
}

const std::vector<Command>& commands() {
    static const std::vector<Command> all = [] {
        std::vector<Command> c;
        c.push_back({"mass", "homogeneous mass of connectivity: closed form, quadrature, leading order",
                     with_common(concat(model_options("siso", "2"),
                                        {{"d", "3", "dimension list"},
                                         {"eta", "2", "path-loss exponent list"},
                                         {"beta", "1", "beta list"}})),
                     cmd_mass});
        c.push_back({"pfc", "analytic full-connectivity probability vs density with per-class partial sums",
                     with_common(concat(concat(model_options("mimo", "2"), prism_options("7")),
                                        {{"beta", "1", "beta"},
                                         {"eta", "2", "path-loss exponent"},
                                         {"d", "3", "dimension"},
                                         {"rho", "0.1:1.2:0.02", "density grid start:stop:step or list"},
                                         {"table", "false", "emit the boundary-feature table instead", true}})),
                     cmd_pfc});
        c.push_back({"simulate", "Monte Carlo full-connectivity estimates next to the analytic curve",
                     with_common(concat(concat(model_options("mimo", "2"), prism_options("7")),
                                        {{"beta", "1", "beta"},
                                         {"eta", "2", "path-loss exponent"},
                                         {"d", "3", "dimension"},
                                         {"rho", "0.4:1.0:0.1", "density grid start:stop:step or list"},
                                         {"trials", "2000", "trials per density"},
                                         {"poisson", "false", "Poisson node count instead of N = round(rho V)", true},
                                         {"link-floor", "1e-12", "skip pairs where H falls below this"}})),
                     cmd_simulate});
        c.push_back({"field", "connection-probability field of one sampled network",
                     with_common(concat(concat(model_options("siso", "2"), prism_options("7")),
                                        {{"square", "", "2D square side; unset means the 3D prism"},
                                         {"beta", "1", "beta"},
                                         {"eta", "2", "path-loss exponent"},
                                         {"d", "", "dimension (default 2 for --square, else 3)"},
                                         {"rho", "1.5", "node density"},
                                         {"grid", "", "points per axis (default 200 in 2D, 40 in 3D)"}})),
                     cmd_field});
        c.push_back({"validate", "run the invariant suite; exit 4 on any failure",
                     with_common({{"check", "", "comma-separated subset of checks"},
                                  {"perturb", "false", "inject a wrong constant (negative control)", true}}),
                     cmd_validate});
        return c;
    }();
    return all;
}

}  // namespace confnet::cli
