#include "adjpair/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "adjpair/error.hpp"
#include "adjpair/extensions.hpp"
#include "adjpair/figure.hpp"
#include "adjpair/onedim.hpp"
#include "adjpair/random.hpp"

namespace adjpair {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands{{
    {Command::Validate, "validate"},
    {Command::GreenCheck, "green-check"},
    {Command::CheckSubspace, "check-subspace"},
    {Command::Classify, "classify"},
    {Command::OracleScan, "oracle-scan"},
    {Command::Report, "report"},
}};

// Oracle residual below which a γ counts as solving the normality equation.
constexpr double kOracleZero = 1e-6;
constexpr double kGreenSlack = 10.0;

json ext_json(const ExtendedReal& t) { return t.is_infinite() ? json("inf") : json(t.value()); }

json gamma_json(const CircleParam& g) { return {{"value", complex_json(g.value())}, {"angle", g.angle()}}; }

double angular_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
    return std::min(d, 2.0 * std::numbers::pi - d);
}

struct Context {
    const ModelFile& file;
    const DiscreteModel& model;
    const RunOptions& options;
    RunReport& report;
    std::optional<Classification> classification;

    void fail() { report.status = "failed"; }

    template <class F>
    void timed(const std::string& stage, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        f();
        if (options.timings)
            (*report.timings_ms)[stage] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

void stage_validate(Context& ctx) {
    const auto& m = ctx.model;
    const auto& a = m.generator().asymptotics();
    const Envelope env = m.generator().envelope();
    ctx.report.verdicts["validate"] = {
        {"valid", true},
        {"generator", m.generator().describe()},
        {"xi", describe(m.xi())},
        {"growth", m.growth()},
        {"eps", m.eps()},
        {"settle_index", a.settle_index},
        {"envelope", {{"lower", env.lower}, {"upper", env.upper}}},
        {"kernel_dims", {{"a_star", m.kernel_a_star().size()}, {"b_star", m.kernel_b_star().size()}}},
    };
    const auto& n2 = m.xi_norm_squared();
    ctx.report.residuals.push_back({"validate.xi_norm_squared", n2.value.real(), n2.bound});
}

void stage_green(Context& ctx) {
    const std::uint64_t seed = ctx.options.seed.value_or(ctx.file.seed);
    Rng rng(seed);
    const double limit = ctx.model.tolerance().residual;
    std::size_t passed = 0;
    double max_residual = 0.0, max_bound = 0.0, worst_ratio = -1.0;
    GreenResult worst;
    for (std::size_t i = 0; i < ctx.options.pairs; ++i) {
        ElementPair p1{random_astar(ctx.model, rng), random_bstar(ctx.model, rng)};
        ElementPair p2{random_astar(ctx.model, rng), random_bstar(ctx.model, rng)};
        const GreenResult g = green_residual(ctx.model, p1, p2);
        if (g.residual <= kGreenSlack * g.bound && g.bound <= limit) ++passed;
        max_residual = std::max(max_residual, g.residual);
        max_bound = std::max(max_bound, g.bound);
        const double ratio = g.bound > 0.0 ? g.residual / g.bound : (g.residual > 0.0 ? INFINITY : 0.0);
        if (ratio > worst_ratio) worst_ratio = ratio, worst = g;
    }
    const bool all = passed == ctx.options.pairs;
    ctx.report.verdicts["green"] = {
        {"pairs", ctx.options.pairs}, {"seed", seed},   {"passed", passed},
        {"all_pass", all},            {"slack", kGreenSlack}, {"bound_limit", limit},
    };
    ctx.report.residuals.push_back({"green.max_residual", max_residual, max_bound});
    ctx.report.residuals.push_back({"green.worst_ratio_pair", worst.residual, worst.bound});
    if (!all) ctx.fail();
}

void stage_subspace(Context& ctx) {
    if (!ctx.file.subspace)
        throw Error(ErrorKind::SchemaError, "cli", "subspace: check-subspace needs a 'subspace' field");
    const KernelFrame frame(ctx.model);
    const ExtensionSubspace c(frame, *ctx.file.subspace);
    const NormalityVerdict v = check_normal(frame, c);
    const ExtensionSubspace cp = cprime(frame, c);

    json verdict = {
        {"normal", v.normal},
        {"reason", v.reason ? json(to_string(*v.reason)) : json(nullptr)},
        {"dim", c.dim()},
        {"dim_cprime", cp.dim()},
    };
    if (v.normal) {
        json w = json::array();
        for (Eigen::Index i = 0; i < v.witness.rows(); ++i)
            for (Eigen::Index j = 0; j < v.witness.cols(); ++j) w.push_back(complex_json(v.witness(i, j)));
        verdict["witness"] = w;
    }
    // Graph form C = {(Gv, v)} when the v-part is square and invertible.
    const CMatrix vp = c.v_part();
    json graph_j = {{"graph_form", false}};
    if (vp.rows() == vp.cols() && c.dim() == frame.dim_b()) {
        Eigen::FullPivLU<CMatrix> lu(vp);
        if (lu.isInvertible()) {
            const GraphOperator g{CMatrix(c.u_part()) * lu.inverse()};
            const auto iso = boundary_isometry(frame, g);
            graph_j = {{"graph_form", true}, {"isometry_exists", iso.has_value()}, {"agrees", iso.has_value() == v.normal}};
            if (iso.has_value() != v.normal) ctx.fail();
        }
    }
    verdict["boundary_isometry"] = graph_j;
    ctx.report.verdicts["subspace"] = verdict;
    ctx.report.residuals.push_back({"subspace.domain", v.domain_residual, v.threshold});
    if (v.reason != NotNormalReason::DomainMismatch && v.reason != NotNormalReason::DegenerateDim)
        ctx.report.residuals.push_back({"subspace.norm", v.norm_residual, v.threshold});
    if (!v.normal) ctx.fail();
}

const Classification& ensure_classified(Context& ctx) {
    if (!ctx.classification) ctx.classification = classify(ctx.model, ctx.options.verify_to);
    return *ctx.classification;
}

void stage_classify(Context& ctx) {
    const Classification& c = ensure_classified(ctx);
    const bool line = c.kind == Classification::Kind::LineFamily;
    json v = {
        {"kind", line ? "line" : "canonical_only"},
        {"certification", c.certification == Certification::Exact ? "exact" : "verified_to_index"},
        {"verified_to", c.verified_to},
        {"counterexample", c.counterexample ? json(*c.counterexample) : json(nullptr)},
    };
    if (line) {
        v["t"] = ext_json(c.line->t);
        v["s"] = c.line->s;
        v["family"] = c.family;
        v["gamma"] = gamma_json(*c.gamma);
    }
    ctx.report.verdicts["classify"] = v;
    ctx.report.residuals.push_back({"classify.line_defect", c.max_line_defect, ctx.model.tolerance().residual});
    if (ctx.options.figure) emit_figure(ctx.model, c, *ctx.options.figure);
    if (!line) ctx.fail();
}

void stage_oracle(Context& ctx) {
    const Classification& c = ensure_classified(ctx);
    const OracleScan scan = oracle_scan(ctx.model, ctx.options.grid, ctx.options.truncation);
    const auto& r = scan.refined_residual;
    json refined = {{"gamma", gamma_json(scan.refined.gamma)},
                    {"alpha", complex_json(scan.refined.alpha)},
                    {"t", ext_json(t_from_gamma(scan.refined.gamma))},
                    {"s", s_from(scan.refined.gamma, scan.refined.alpha)}};
    bool consistent;
    if (c.kind == Classification::Kind::LineFamily) {
        consistent = r.upper <= kOracleZero &&
                     angular_distance(scan.refined.gamma.angle(), c.gamma->angle()) <= kOracleZero;
    } else {
        consistent = scan.grid_min.residual - scan.grid_min.bound > kOracleZero;
    }
    ctx.report.verdicts["oracle"] = {
        {"grid_points", scan.grid_points},
        {"truncation", scan.truncation},
        {"exclusion", scan.exclusion},
        {"grid_min", {{"gamma", gamma_json(scan.grid_min.gamma)}, {"alpha", complex_json(scan.grid_min.alpha)}}},
        {"refined", refined},
        {"zero_threshold", kOracleZero},
        {"consistent_with_classify", consistent},
    };
    ctx.report.residuals.push_back({"oracle.refined", r.value, r.upper - r.value});
    ctx.report.residuals.push_back({"oracle.grid_min", scan.grid_min.residual, scan.grid_min.bound});
    ctx.report.residuals.push_back({"oracle.min_elsewhere", scan.min_elsewhere, scan.min_elsewhere_bound});
    if (!consistent) ctx.fail();
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [c, n] : kCommands)
        if (n == name) return c;
    return std::nullopt;
}

std::string_view to_string(Command c) {
    for (const auto& [k, n] : kCommands)
        if (k == c) return n;
    return "unknown";
}

void RunOptions::validate() const {
    auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, "cli", what); };
    if (tol && !(*tol > 0.0 && std::isfinite(*tol))) bad("--tol must be a positive number");
    if (pairs < 1 || pairs > 100000) bad("--pairs must be in [1, 100000]");
    if (grid < 16 || grid > 10000000) bad("--grid must be in [16, 10000000]");
    if (truncation < 100 || truncation > 100000000) bad("--truncation must be in [100, 100000000]");
    if (verify_to < 2) bad("--verify-to must be at least 2");
}

RunResult run_model(Command command, const ModelFile& file, const RunOptions& options) {
    RunResult result;
    RunReport& report = result.report;
    report.command = std::string(to_string(command));
    report.model_name = file.name;
    if (options.timings) report.timings_ms.emplace();
    try {
        options.validate();
        Tolerance tol = file.tolerance;
        if (options.tol) tol.inner_product = *options.tol;
        const auto start = std::chrono::steady_clock::now();
        const DiscreteModel model = build_model(file.generator, file.xi, tol);
        if (options.timings)
            (*report.timings_ms)["build"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report.model_digest = model.digest_hex();

        Context ctx{file, model, options, report, std::nullopt};
        switch (command) {
            case Command::Validate: ctx.timed("validate", [&] { stage_validate(ctx); }); break;
            case Command::GreenCheck: ctx.timed("green", [&] { stage_green(ctx); }); break;
            case Command::CheckSubspace: ctx.timed("subspace", [&] { stage_subspace(ctx); }); break;
            case Command::Classify: ctx.timed("classify", [&] { stage_classify(ctx); }); break;
            case Command::OracleScan: ctx.timed("oracle", [&] { stage_oracle(ctx); }); break;
            case Command::Report:
                ctx.timed("validate", [&] { stage_validate(ctx); });
                ctx.timed("classify", [&] { stage_classify(ctx); });
                ctx.timed("oracle", [&] { stage_oracle(ctx); });
                ctx.timed("green", [&] { stage_green(ctx); });
                if (file.subspace) ctx.timed("subspace", [&] { stage_subspace(ctx); });
                break;
        }
    } catch (const Error& e) {
        report.status = "error";
        report.error = ErrorInfo{std::string(to_string(e.kind())), e.module(), e.what()};
        result.exit_code = 2;
        return result;
    }
    result.exit_code = report.status == "failed" && options.assert_verdicts ? 1 : 0;
    return result;
}

RunResult run(Command command, const std::filesystem::path& model_file, const RunOptions& options) {
    try {
        return run_model(command, load_model(model_file), options);
    } catch (const Error& e) {
        RunResult result;
        result.report.command = std::string(to_string(command));
        result.report.status = "error";
        result.report.error = ErrorInfo{std::string(to_string(e.kind())), e.module(), e.what()};
        if (options.timings) result.report.timings_ms.emplace();
        result.exit_code = 2;
        return result;
    }
}

}  // namespace adjpair
