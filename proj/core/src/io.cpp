#include "pharmonic/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pharmonic {

using nlohmann::json;

namespace {

std::string dump(const json& j, int indent) { return indent >= 0 ? j.dump(indent) : j.dump(); }

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json witness_to_json(const SparseWitness& w) {
    return json{{"idx", w.idx}, {"val", w.val}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"family", w.family}};
}

} // namespace

std::string ball_to_json(const Group& group, const CayleyBall& ball, int indent) {
    json edges = json::array();
    for (std::size_t v = 0; v < ball.size(); ++v) {
        for (int s = 0; s < ball.degree; ++s) {
            const std::int32_t j = ball.neighbor(static_cast<std::int32_t>(v), s);
            if (j >= 0) edges.push_back({static_cast<std::int64_t>(v), group.generator_name(s), j});
        }
    }
    json doc{{"family", ball.spec.name()},
             {"radius", ball.radius},
             {"n_vertices", ball.size()},
             {"edges", std::move(edges)},
             {"boundary", ball.boundary}};
    return dump(doc, indent);
}

std::string function_to_json(const GraphFunction& f, const std::string& ball_ref, int indent) {
    return dump(json{{"ball_ref", ball_ref}, {"values", f.values}}, indent);
}

std::string function_to_csv(const Group& group, const GraphFunction& f) {
    std::string out = "vertex,value\n";
    for (std::size_t v = 0; v < f.values.size(); ++v) {
        out += '"' + group.to_string(f.ball->vertices[v]) + "\"," + csv_number(f.values[v]) + "\n";
    }
    return out;
}

std::string solve_report_to_json(const SolveReport& r, int indent) {
    return dump(json{{"iterations", r.iterations},
                     {"final_energy", r.final_energy},
                     {"grad_sup", r.grad_sup},
                     {"max_interior_residual", r.max_interior_residual},
                     {"converged", r.converged}},
                indent);
}

std::string harmonic_report_to_json(const HarmonicReport& r, int indent) {
    return dump(json{{"p", r.p},
                     {"ball_radius", r.ball_radius},
                     {"removal_radius", r.removal_radius},
                     {"terms", r.terms},
                     {"rho", r.rho},
                     {"rhs_norm", r.rhs_norm},
                     {"tail_bound", r.tail_bound},
                     {"residual_norm", r.residual_norm},
                     {"h2_norm", r.h2_norm},
                     {"h_sup", r.h_sup},
                     {"h_inf", r.h_inf},
                     {"step_support_ok", r.step_support_ok}},
                indent);
}

std::string inequality_report_to_json(const InequalityReport& r, int indent) {
    return dump(json{{"id", r.id},
                     {"trials", r.trials},
                     {"empirical_constant", r.empirical_constant},
                     {"witness", witness_to_json(r.witness)},
                     {"pass", r.pass},
                     {"stabilization_ratio", r.stabilization_ratio},
                     {"note", r.note}},
                indent);
}

std::string folner_records_to_csv(const std::vector<FolnerRecord>& records) {
    std::string out = "k,size,boundary,boundary_edges,ratio,folner_norm,edge_identity_ok,vertex_bound_ok\n";
    for (const auto& r : records) {
        out += std::to_string(r.k) + "," + std::to_string(r.size) + "," + std::to_string(r.boundary) +
               "," + std::to_string(r.boundary_edges) + "," + csv_number(r.ratio) + "," +
               csv_number(r.folner_norm) + "," + (r.edge_identity_ok ? "1" : "0") + "," +
               (r.vertex_bound_ok ? "1" : "0") + "\n";
    }
    return out;
}

std::string z_example_to_json(const ZExampleReport& r, int indent) {
    return dump(json{{"p", r.p},
                     {"p_prime", r.p_prime},
                     {"n_terms", r.n_terms},
                     {"lp_pow_partial", r.lp_pow_partial},
                     {"lp_pow_half", r.lp_pow_half},
                     {"divergence_gap", r.divergence_gap},
                     {"lp_diverging", r.lp_diverging},
                     {"lpp_pow_partial", r.lpp_pow_partial},
                     {"lpp_tail_ratio", r.lpp_tail_ratio},
                     {"lpp_cauchy", r.lpp_cauchy},
                     {"diff_sum", r.diff_sum},
                     {"diff_bound", r.diff_bound},
                     {"in_dp", r.in_dp}},
                indent);
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace pharmonic
