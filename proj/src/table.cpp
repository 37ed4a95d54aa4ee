#include "ncairy/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "ncairy/errors.hpp"

namespace ncairy {

void Table::add_row(std::vector<cplx> row) {
    if (row.size() != columns.size()) throw DomainError("table row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

namespace {

void write_csv(std::ostream& out, const Table& t) {
    std::string line;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) line += ',';
        const Column& col = t.columns[c];
        line += col.is_complex ? "re_" + col.name + ",im_" + col.name : col.name;
    }
    out << line << '\n';
    for (const auto& row : t.rows) {
        line.clear();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) line += ',';
            line += format_number(row[c].real());
            if (t.columns[c].is_complex) line += ',' + format_number(row[c].imag());
        }
        out << line << '\n';
    }
}

void write_json(std::ostream& out, const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            const Column& col = t.columns[c];
            if (col.is_complex) obj[col.name] = {{"re", row[c].real()}, {"im", row[c].imag()}};
            else obj[col.name] = row[c].real();
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

} // namespace

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (format == OutputFormat::csv) write_csv(out, table);
    else write_json(out, table);
    out.flush();
    if (!out) throw IOError("failed to write table");
}

Table grid_table(const HMGrid& grid, double from, double to, double spacing) {
    if (!(spacing > 0.0)) throw DomainError("grid_table: spacing must be positive");
    std::size_t r = grid.dim();
    Table t;
    t.columns.push_back({"S", false});
    for (const char* prefix : {"b", "db"})
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k)
                t.columns.push_back({std::string(prefix) + "_" + std::to_string(j + 1) + std::to_string(k + 1), true});
    std::vector<double> s = grid.s_values();
    std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(spacing / grid.step())));
    const auto& b = grid.beta_nodes();
    const auto& db = grid.dbeta_nodes();
    std::size_t first = 0;
    while (first < s.size() && s[first] > to + 1e-12) ++first;
    for (std::size_t n = first; n < s.size() && s[n] >= from - 1e-12; n += stride) {
        std::vector<cplx> row{s[n]};
        for (const ComplexMatrix* m : {&b[n], &db[n]})
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k) row.push_back((*m)(j, k));
        t.add_row(std::move(row));
    }
    return t;
}

Table det_result_table(const DetResult& d) {
    Table t;
    t.columns = {{"value", true}, {"log_abs", false}, {"nodes_used", false}, {"est_error", false}, {"converged", false}};
    t.add_row({d.value, d.log_abs, static_cast<double>(d.nodes_used), d.est_error, d.converged ? 1.0 : 0.0});
    return t;
}

std::string det_result_to_json(const DetResult& d) {
    nlohmann::ordered_json j;
    j["value"] = {{"re", d.value.real()}, {"im", d.value.imag()}};
    j["log_abs"] = d.log_abs;
    j["nodes_used"] = d.nodes_used;
    j["est_error"] = d.est_error;
    j["converged"] = d.converged;
    return j.dump();
}

DetResult det_result_from_json(const std::string& text) {
    DetResult d;
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        d.value = cplx(j.at("value").at("re").get<double>(), j.at("value").at("im").get<double>());
        d.log_abs = j.at("log_abs").get<double>();
        d.nodes_used = j.at("nodes_used").get<int>();
        d.est_error = j.at("est_error").get<double>();
        d.converged = j.at("converged").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed DetResult JSON: ") + e.what());
    }
    return d;
}

} // namespace ncairy
