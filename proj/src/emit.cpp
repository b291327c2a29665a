#include "projfeas/emit.hpp"

#include "projfeas/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace projfeas {

namespace {

using nlohmann::json;

constexpr AlgorithmTag kAllTags[] = {
    AlgorithmTag::kAlternating,       AlgorithmTag::kAveraged,  AlgorithmTag::kAveragedViaProduct,
    AlgorithmTag::kInexactAlternating, AlgorithmTag::kPerturbed, AlgorithmTag::kCyclic,
};

/// Shortest representation that reads back to the same double.
void put(std::ostream& out, double v) {
    if (std::isnan(v)) return;
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json numbers(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(number(x));
    return arr;
}

double read_number(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::vector<double> read_numbers(const json& j) {
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) out.push_back(read_number(x));
    return out;
}

json trace_to_json(const Trace& t) {
    json j;
    j["algorithm"] = std::string(to_string(t.algorithm));
    j["seed"] = t.seed;
    j["converged"] = t.converged;
    j["f_values"] = numbers(t.f_values);
    j["grad_norms"] = numbers(t.grad_norms);
    j["step_norms"] = numbers(t.step_norms);
    j["ratios"] = numbers(t.ratios);
    json dists = json::array();
    for (const auto& row : t.per_set_distances) dists.push_back(numbers(row));
    j["per_set_distances"] = dists;

    const bool small = !t.empty() && t.iterates.front().size() <= kMaxJsonIterateDim;
    j["iterates_included"] = small || t.empty();
    json its = json::array();
    if (small)
        for (const auto& x : t.iterates)
            its.push_back(numbers(std::vector<double>(x.data(), x.data() + x.size())));
    j["iterates"] = its;
    return j;
}

json report_to_json(const RegularityReport& r) {
    json j;
    j["cbar_pairwise"] = number(r.cbar_pairwise);
    j["cond"] = {{"state", std::string(to_string(r.cond.state))},
                 {"value", r.cond.finite() ? number(r.cond.value) : json(nullptr)},
                 {"method", std::string(to_string(r.cond.method))}};
    j["cbar_avg"] = number(r.cbar_avg);
    j["reg_modulus"] = r.reg_modulus.finite ? number(r.reg_modulus.value) : json(nullptr);
    j["m_sets"] = r.m_sets;
    j["c_alternating"] = number(r.c_alternating);
    j["c_averaged"] = number(r.c_averaged);
    j["rate_alternating"] = number(r.rate_alternating);
    j["rate_alternating_both_super"] = number(r.rate_alternating_both_super);
    j["rate_averaged"] = number(r.rate_averaged);
    j["rate_averaged_super"] = number(r.rate_averaged_super);
    j["qlinear_factor"] = number(r.qlinear_factor);
    j["bound_averaged_kappa"] =
        r.bound_averaged_kappa ? number(*r.bound_averaged_kappa) : json(nullptr);
    j["bound_alternating_kappa"] =
        r.bound_alternating_kappa ? number(*r.bound_alternating_kappa) : json(nullptr);
    j["method"] = std::string(to_string(r.method));
    return j;
}

json config_to_json(const ExperimentConfig& c) {
    return {
        {"experiment", std::string(to_string(c.experiment))},
        {"algorithm", std::string(to_string(c.algorithm))},
        {"n", c.n},
        {"m_dict", c.m_dict},
        {"d_rows", c.d_rows},
        {"alpha", c.alpha},
        {"project_initial", c.project_initial},
        {"theta", c.theta},
        {"sets", c.sets},
        {"sub_dim", c.sub_dim},
        {"shift", c.shift},
        {"c", c.c},
        {"eps", c.run.inexact_eps},
        {"seed", c.run.seed},
        {"max_iter", c.run.max_iter},
        {"stop_tol", c.run.stop_tol},
    };
}

json fit_to_json(const std::optional<RateFit>& fit) {
    if (!fit) return nullptr;
    return {{"rate", number(fit->rate)},
            {"window_begin", fit->window_begin},
            {"window_end", fit->window_end},
            {"residual", number(fit->residual)}};
}

json summary_to_json(const ExperimentSummary& s) {
    json predicted = json::object();
    for (const auto& [name, value] : s.predicted) predicted[name] = number(value);
    return {
        {"iterations", s.iterations},
        {"final_f", number(s.final_f)},
        {"max_ratio", number(s.max_ratio)},
        {"asymptotic_ratio", number(s.asymptotic_ratio)},
        {"monotone", s.monotone},
        {"stalled", s.stalled},
        {"rms_fit", fit_to_json(s.rms_fit)},
        {"solution_fit", fit_to_json(s.solution_fit)},
        {"predicted", predicted},
        {"notes", s.notes},
    };
}

json document(const Trace& trace, const RegularityReport* report, const ExperimentConfig* config) {
    json j;
    j["trace"] = trace_to_json(trace);
    j["seed"] = trace.seed;
    j["report"] = report ? report_to_json(*report) : json(nullptr);
    j["config"] = config ? config_to_json(*config) : json(nullptr);
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace

std::optional<OutputFormat> parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::kCsv;
    if (s == "json") return OutputFormat::kJson;
    return std::nullopt;
}

void write_trace_csv(std::ostream& out, const Trace& t) {
    const std::size_t m = t.per_set_distances.empty() ? 0 : t.per_set_distances.front().size();
    out << "iter,f,log10_f,grad_norm,step_norm";
    for (std::size_t i = 1; i <= m; ++i) out << ",dist_" << i;
    out << ",ratio\n";
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double f = t.f_values[k];
        out << k << ',';
        put(out, f);
        out << ',';
        put(out, std::log10(f));
        out << ',';
        put(out, t.grad_norms[k]);
        out << ',';
        if (k > 0) put(out, t.step_norms[k - 1]);
        for (double d : t.per_set_distances[k]) {
            out << ',';
            put(out, d);
        }
        out << ',';
        if (k > 0) put(out, t.ratios[k - 1]);
        out << '\n';
    }
}

std::string trace_json(const Trace& trace, const RegularityReport* report,
                       const ExperimentConfig* config) {
    return document(trace, report, config).dump(2);
}

void emit(const Trace& trace, const RegularityReport* report, OutputFormat format,
          const std::filesystem::path& path) {
    if (format == OutputFormat::kJson) {
        write_file(path, trace_json(trace, report, nullptr));
        return;
    }
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file(path, csv.str());
}

void emit(const ExperimentResult& result, OutputFormat format, const std::filesystem::path& path) {
    if (format == OutputFormat::kCsv) {
        emit(result.trace, nullptr, format, path);
        return;
    }
    json j = document(result.trace, result.report ? &*result.report : nullptr, &result.config);
    j["summary"] = summary_to_json(result.summary);
    if (result.perturbed) {
        const PerturbedRun& p = *result.perturbed;
        j["perturbed"] = {{"shift_norm", number(p.shift_norm)},
                          {"distance_from_start", number(p.distance_from_start)},
                          {"c", number(p.c)},
                          {"bound", number(p.bound)},
                          {"within_bound", p.within_bound},
                          {"limit_feasible", p.limit_feasible}};
    }
    write_file(path, j.dump(2));
}

Trace read_trace_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("malformed trace document: ") + e.what());
    }
    const json& j = doc.contains("trace") ? doc.at("trace") : doc;
    Trace t;
    const std::string alg = j.at("algorithm").get<std::string>();
    bool known = false;
    for (AlgorithmTag tag : kAllTags)
        if (to_string(tag) == alg) {
            t.algorithm = tag;
            known = true;
        }
    if (!known) throw IoError("unknown algorithm in trace document: " + alg);
    t.seed = j.at("seed").get<std::uint64_t>();
    t.converged = j.at("converged").get<bool>();
    t.f_values = read_numbers(j.at("f_values"));
    t.grad_norms = read_numbers(j.at("grad_norms"));
    t.step_norms = read_numbers(j.at("step_norms"));
    t.ratios = read_numbers(j.at("ratios"));
    for (const auto& row : j.at("per_set_distances")) t.per_set_distances.push_back(read_numbers(row));
    for (const auto& row : j.at("iterates")) {
        auto v = read_numbers(row);
        t.iterates.push_back(Eigen::Map<const Point>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    return t;
}

} // namespace projfeas
