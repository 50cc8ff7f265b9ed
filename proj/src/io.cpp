#include "minkolab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "minkolab/errors.hpp"

namespace minkolab {

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e400" : "-1e400";  // parses back to +-inf
    if (v == 0.0) v = 0.0;                                 // canonicalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

namespace {

nlohmann::json parse(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("invalid JSON: ") + e.what());
    }
}

void append_vec(std::string& out, const Vec& v, int dim, double extra) {
    out += '[';
    for (int k = 0; k < dim; ++k) {
        out += format_double(v[k]);
        out += ", ";
    }
    out += format_double(extra);
    out += ']';
}

}  // namespace

std::string measure_to_json(const DirectionalMeasure& mu) {
    std::string out = "{\"dim\": " + std::to_string(mu.dim()) + ", \"atoms\": [";
    bool first = true;
    for (const auto& a : mu.atoms()) {
        if (!first) out += ", ";
        first = false;
        append_vec(out, a.dir, mu.dim(), a.weight);
    }
    out += "]}\n";
    return out;
}

DirectionalMeasure measure_from_json(const std::string& text) {
    nlohmann::json j = parse(text);
    if (!j.contains("dim") || !j.contains("atoms")) throw IoError("measure needs dim and atoms");
    int dim = j["dim"].get<int>();
    std::vector<Atom> atoms;
    for (const auto& row : j["atoms"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim + 1)
            throw IoError("measure atom rows must have dim+1 numbers");
        Atom a;
        for (int k = 0; k < dim; ++k) a.dir[k] = row[k].get<double>();
        a.weight = row[dim].get<double>();
        atoms.push_back(a);
    }
    return {dim, std::move(atoms)};
}

DirectionalMeasure load_measure(const std::string& path) {
    return measure_from_json(read_file(path));
}

void save_measure(const DirectionalMeasure& mu, const std::string& path) {
    write_file(path, measure_to_json(mu));
}

std::string polytope_to_json(const Polytope& p) {
    std::string out = "{\"dim\": " + std::to_string(p.dim()) + ", \"halfspaces\": [";
    bool first = true;
    for (const auto& f : p.facets()) {
        if (!first) out += ", ";
        first = false;
        append_vec(out, f.normal, p.dim(), f.offset);
    }
    out += "]}\n";
    return out;
}

Polytope polytope_from_json(const std::string& text) {
    nlohmann::json j = parse(text);
    if (!j.contains("dim") || !j.contains("halfspaces"))
        throw IoError("polytope needs dim and halfspaces");
    int dim = j["dim"].get<int>();
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (const auto& row : j["halfspaces"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim + 1)
            throw IoError("halfspace rows must have dim+1 numbers");
        Vec u;
        for (int k = 0; k < dim; ++k) u[k] = row[k].get<double>();
        normals.push_back(u);
        offsets.push_back(row[dim].get<double>());
    }
    return Polytope::from_halfspaces(dim, normals, offsets);
}

Polytope load_polytope(const std::string& path) { return polytope_from_json(read_file(path)); }

void save_polytope(const Polytope& p, const std::string& path) {
    write_file(path, polytope_to_json(p));
}

std::string solve_report_to_json(const SolveReport& rep) {
    std::string out = "{\n";
    out += "  \"p\": " + format_double(rep.p) + ",\n";
    out += "  \"lambda\": " + format_double(rep.lambda) + ",\n";
    out += "  \"residual\": " + format_double(rep.residual) + ",\n";
    out += "  \"iterations\": " + std::to_string(rep.iterations) + ",\n";
    out += std::string("  \"centered\": ") + (rep.centered ? "true" : "false") + ",\n";
    out += std::string("  \"converged\": ") + (rep.converged ? "true" : "false") + ",\n";
    out += "  \"failure\": \"" + rep.failure + "\",\n";
    out += "  \"energy_trace\": [";
    for (std::size_t i = 0; i < rep.energy_trace.size(); ++i) {
        if (i) out += ", ";
        out += format_double(rep.energy_trace[i]);
    }
    out += "],\n";
    std::string body = polytope_to_json(rep.body);
    if (!body.empty() && body.back() == '\n') body.pop_back();
    out += "  \"body\": " + body + "\n}\n";
    return out;
}

std::string deficit_report_to_json(const DeficitReport& rep) {
    std::string out = "{\n";
    out += "  \"p\": " + format_double(rep.p) + ",\n";
    out += "  \"delta_bm\": " + format_double(rep.delta_bm) + ",\n";
    out += "  \"delta_iso_p\": " + format_double(rep.delta_iso_p) + ",\n";
    out += "  \"alpha\": " + format_double(rep.alpha) + ",\n";
    out += "  \"sigma\": " + format_double(rep.sigma) + ",\n";
    out += "  \"ratio_bm\": " + format_double(rep.ratio_bm) + ",\n";
    out += "  \"ratio_iso\": " + format_double(rep.ratio_iso) + ",\n";
    out += "  \"hausdorff_gap_ratio\": " + format_double(rep.hausdorff_gap_ratio) + ",\n";
    out += "  \"lp_midpoint_deficit\": " + format_double(rep.lp_midpoint_deficit) + ",\n";
    out += "  \"lp_midpoint_gap\": " + format_double(rep.lp_midpoint_gap) + "\n}\n";
    return out;
}

std::string radius_report_to_json(const RadiusBoundReport& rep) {
    std::string out = "{\n";
    out += "  \"p\": " + format_double(rep.p) + ",\n";
    out += "  \"r\": " + format_double(rep.r) + ",\n";
    out += "  \"R\": " + format_double(rep.R) + ",\n";
    out += "  \"theta_s\": " + format_double(rep.theta_s) + ",\n";
    out += "  \"perimeter\": " + format_double(rep.perimeter) + ",\n";
    out += std::string("  \"lower_ok\": ") + (rep.lower_ok ? "true" : "false") + ",\n";
    out += std::string("  \"upper_ok\": ") + (rep.upper_ok ? "true" : "false") + ",\n";
    out += "  \"slack_lower\": " + format_double(rep.slack_lower) + ",\n";
    out += "  \"slack_upper\": " + format_double(rep.slack_upper) + ",\n";
    out += "  \"constants_used\": {\"c\": " + format_double(rep.c_lower) +
           ", \"C\": " + format_double(rep.c_upper) +
           ", \"exp_lower\": " + format_double(rep.exp_lower) +
           ", \"exp_upper\": " + format_double(rep.exp_upper) + ", \"explicit\": " +
           (rep.explicit_constants ? "true" : "false") + "},\n";
    out += "  \"empirical_c_lower\": " + format_double(rep.empirical_c_lower) + ",\n";
    out += "  \"empirical_c_upper\": " + format_double(rep.empirical_c_upper) + "\n}\n";
    return out;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::string out = "epsilon,seed,theta,theta_plus,dc,w1,alpha,hausdorff,main_ratio\n";
    for (const auto& r : records) {
        if (!r.included) continue;
        out += format_double(r.epsilon);
        out += ',' + std::to_string(r.seed);
        out += ',' + format_double(r.theta);
        out += ',' + format_double(r.theta_plus);
        out += ',' + format_double(r.dc);
        out += ',' + format_double(r.w1);
        out += ',' + format_double(r.alpha);
        out += ',' + format_double(r.hausdorff);
        out += ',' + format_double(r.main_ratio);
        out += '\n';
    }
    return out;
}

std::vector<SweepRecord> sweep_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV");
    if (line != "epsilon,seed,theta,theta_plus,dc,w1,alpha,hausdorff,main_ratio")
        throw IoError("unexpected CSV header: " + line);
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) throw IoError("CSV row needs 9 cells: " + line);
        SweepRecord r;
        r.epsilon = std::stod(cells[0]);
        r.seed = std::stol(cells[1]);
        r.theta = std::stod(cells[2]);
        r.theta_plus = std::stod(cells[3]);
        r.dc = std::stod(cells[4]);
        r.w1 = std::stod(cells[5]);
        r.alpha = std::stod(cells[6]);
        r.hausdorff = std::stod(cells[7]);
        r.main_ratio = std::stod(cells[8]);
        out.push_back(r);
    }
    return out;
}

}  // namespace minkolab
