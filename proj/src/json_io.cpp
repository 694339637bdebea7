#include "slspec/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace slspec {

namespace {

using nlohmann::json;

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void write_number_array(std::ostream& os, const std::vector<double>& v) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << fmt17(v[i]);
    }
    os << ']';
}

json parse_or_usage_error(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string(what) + ": not valid JSON");
    return j;
}

std::vector<double> number_array(const json& j, const char* what) {
    if (!j.is_array())
        throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number())
            throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
        double v = e.get<double>();
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": entries must be finite");
        out.push_back(v);
    }
    return out;
}

const char* jacobian_mode_name(JacobianMode m) {
    return m == JacobianMode::analytic ? "analytic" : "finite_difference";
}

}  // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_potential_json(std::ostream& os, const Potential& q) {
    os << "{\n  \"fourier\": {\n    \"cos\": ";
    write_number_array(os, q.cos_coeffs());
    os << ",\n    \"sin\": ";
    write_number_array(os, q.sin_coeffs());
    os << "\n  }\n}\n";
}

Potential read_potential_json(const std::string& text, int grid_modes,
                              PotentialReadInfo* info) {
    json j = parse_or_usage_error(text, "potential file");
    if (info) *info = PotentialReadInfo{};
    if (j.is_object() && j.contains("fourier")) {
        const json& f = j["fourier"];
        if (!f.is_object())
            throw std::invalid_argument("potential file: \"fourier\" must be an object");
        std::vector<double> cos_c, sin_c;
        if (f.contains("cos")) cos_c = number_array(f["cos"], "potential file: cos");
        if (f.contains("sin")) sin_c = number_array(f["sin"], "potential file: sin");
        return Potential(std::move(cos_c), std::move(sin_c));
    }
    if (j.is_object() && j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object() || !g.contains("values"))
            throw std::invalid_argument("potential file: \"grid\" needs a \"values\" array");
        std::vector<double> values = number_array(g["values"], "potential file: grid values");
        GridProjection proj = potential_from_grid(values, grid_modes);
        if (info) {
            info->from_grid = true;
            info->removed_mean = proj.removed_mean;
            info->tail_rms = proj.tail_rms;
        }
        return proj.q;
    }
    throw std::invalid_argument(
        "potential file: expected a top-level \"fourier\" or \"grid\" object");
}

void write_spectral_vector_json(std::ostream& os, const SpectralVector& v) {
    os << "{\n  \"kind\": \"" << vec_kind_name(v.kind) << "\",\n  \"N\": " << v.N
       << ",\n  \"entries\": [";
    if (vec_kind_is_scalar(v.kind)) {
        for (size_t i = 0; i < v.scalars.size(); ++i) {
            if (i) os << ", ";
            os << fmt17(v.scalars[i]);
        }
    } else {
        for (size_t i = 0; i < v.pairs.size(); ++i) {
            if (i) os << ", ";
            os << '[' << fmt17(v.pairs[i][0]) << ", " << fmt17(v.pairs[i][1]) << ']';
        }
    }
    os << "]\n}\n";
}

SpectralVector read_spectral_vector_json(const std::string& text) {
    json j = parse_or_usage_error(text, "spectral-vector file");
    if (!j.is_object() || !j.contains("kind") || !j.contains("N") || !j.contains("entries"))
        throw std::invalid_argument(
            "spectral-vector file: expected {\"kind\", \"N\", \"entries\"}");
    if (!j["kind"].is_string())
        throw std::invalid_argument("spectral-vector file: \"kind\" must be a string");
    SpectralVector v;
    v.kind = vec_kind_from_name(j["kind"].get<std::string>());
    if (!j["N"].is_number_integer() || j["N"].get<int>() < 0)
        throw std::invalid_argument("spectral-vector file: \"N\" must be a non-negative integer");
    v.N = j["N"].get<int>();
    const json& e = j["entries"];
    if (!e.is_array())
        throw std::invalid_argument("spectral-vector file: \"entries\" must be an array");
    if (vec_kind_is_scalar(v.kind)) {
        v.scalars = number_array(e, "spectral-vector file: entries");
    } else {
        for (const auto& p : e) {
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument(
                    "spectral-vector file: two-component entries must be [a, b] pairs");
            std::vector<double> pair = number_array(p, "spectral-vector file: entry pair");
            v.pairs.push_back({pair[0], pair[1]});
        }
    }
    return v;
}

void write_equivalence_report_json(std::ostream& os, const EquivalenceReport& report) {
    os << "{\n  \"which\": \"" << escape(report.which) << "\",\n  \"sigma\": \""
       << escape(report.sigma) << "\",\n  \"N\": " << report.N
       << ",\n  \"solver_failed\": " << (report.solver_failed ? "true" : "false")
       << ",\n  \"failure_cause\": \"" << escape(report.failure_cause)
       << "\",\n  \"pass\": " << (report.pass ? "true" : "false")
       << ",\n  \"identities\": [";
    for (size_t i = 0; i < report.identities.size(); ++i) {
        const IdentityCheck& id = report.identities[i];
        os << (i ? ",\n    " : "\n    ") << "{\"name\": \"" << escape(id.name)
           << "\", \"residual\": " << fmt17(id.residual)
           << ", \"tolerance\": " << fmt17(id.tolerance)
           << ", \"pass\": " << (id.pass ? "true" : "false") << '}';
    }
    os << (report.identities.empty() ? "]" : "\n  ]") << "\n}\n";
}

void write_reconstruction_report_json(std::ostream& os, const ReconstructionResult& result,
                                      const SolverConfig& cfg) {
    os << "{\n  \"converged\": " << (result.converged ? "true" : "false")
       << ",\n  \"iterations\": " << result.iterations
       << ",\n  \"residual_norm\": " << fmt17(result.residual_norm)
       << ",\n  \"tail_residual\": " << fmt17(result.tail_residual)
       << ",\n  \"jacobian_condition_estimate\": " << fmt17(result.jacobian_condition_estimate)
       << ",\n  \"residual_history\": ";
    write_number_array(os, result.residual_history);
    os << ",\n  \"settings\": {\n"
       << "    \"N\": " << cfg.N << ",\n"
       << "    \"residual_tol\": " << fmt17(cfg.residual_tol) << ",\n"
       << "    \"max_iter\": " << cfg.max_iter << ",\n"
       << "    \"damping_factor\": " << fmt17(cfg.damping_factor) << ",\n"
       << "    \"min_step\": " << fmt17(cfg.min_step) << ",\n"
       << "    \"jacobian_mode\": \"" << jacobian_mode_name(cfg.jacobian_mode) << "\",\n"
       << "    \"fd_step\": " << fmt17(cfg.fd_step) << ",\n"
       << "    \"condition_limit\": " << fmt17(cfg.condition_limit) << ",\n"
       << "    \"tail_levels\": " << cfg.tail_levels << ",\n"
       << "    \"grid_steps\": " << cfg.integrator.grid_steps << ",\n"
       << "    \"min_steps\": " << cfg.integrator.min_steps << ",\n"
       << "    \"steps_per_wavelength\": " << cfg.integrator.steps_per_wavelength << "\n"
       << "  }\n}\n";
}

void write_estimate_report_json(std::ostream& os, const EstimateReport& report) {
    os << "{\n  \"q_norm\": " << fmt17(report.q_norm)
       << ",\n  \"f_norm\": " << fmt17(report.f_norm)
       << ",\n  \"p_norm\": " << fmt17(report.p_norm)
       << ",\n  \"h1_norm\": " << fmt17(report.h1_norm)
       << ",\n  \"h_sup\": " << fmt17(report.h_sup)
       << ",\n  \"any_rigorous_violation\": " << (report.any_rigorous_violation ? "true" : "false")
       << ",\n  \"lines\": [";
    for (size_t i = 0; i < report.lines.size(); ++i) {
        const EstimateLine& line = report.lines[i];
        os << (i ? ",\n    " : "\n    ") << "{\"name\": \"" << escape(line.name)
           << "\", \"lhs\": " << fmt17(line.lhs) << ", \"rhs\": " << fmt17(line.rhs)
           << ", \"holds\": " << (line.holds ? "true" : "false")
           << ", \"rigorous\": " << (line.rigorous ? "true" : "false") << '}';
    }
    os << (report.lines.empty() ? "]" : "\n  ]") << "\n}\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace slspec
