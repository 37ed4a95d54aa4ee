#include "ncairy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ncairy/errors.hpp"

namespace ncairy {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
    std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + t + "'");
    }
    if (used != t.size()) throw DomainError("not a number: '" + t + "'");
    return v;
}

long long parse_integer(const std::string& text) {
    std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw DomainError("not an integer: '" + t + "'");
    }
    if (used != t.size()) throw DomainError("not an integer: '" + t + "'");
    return v;
}

} // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_number(tok));
    return out;
}

OutputFormat parse_format(const std::string& text) {
    std::string t = trim(text);
    if (t == "csv") return OutputFormat::csv;
    if (t == "json") return OutputFormat::json;
    throw DomainError("unknown output format '" + t + "' (csv or json)");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "r") cfg.r = static_cast<int>(parse_integer(value));
    else if (key == "shifts") cfg.shifts = parse_number_list(value);
    else if (key == "coupling_re") cfg.coupling_re = parse_number_list(value);
    else if (key == "coupling_im") cfg.coupling_im = parse_number_list(value);
    else if (key == "quad_nodes") cfg.quad_nodes = static_cast<int>(parse_integer(value));
    else if (key == "quad_cutoff") cfg.quad_cutoff = parse_number(value);
    else if (key == "tol") cfg.tol = parse_number(value);
    else if (key == "hm_s0") cfg.hm_s0 = parse_number(value);
    else if (key == "hm_smax") cfg.hm_smax = parse_number(value);
    else if (key == "hm_step") cfg.hm_step = parse_number(value);
    else if (key == "hm_tol") cfg.hm_tol = parse_number(value);
    else if (key == "output_format") cfg.output_format = parse_format(value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(value));
    else throw DomainError("unknown configuration key '" + key + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        try {
            apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const DomainError& e) {
            throw DomainError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read config file '" + path + "'");
    return parse_config(in, std::move(base));
}

void RunConfig::validate() const {
    if (r < 1 || r > 16) throw DomainError("r must lie in [1, 16]");
    std::size_t rr = static_cast<std::size_t>(r);
    if (shifts.size() != rr)
        throw DomainError("expected " + std::to_string(r) + " shifts, got " + std::to_string(shifts.size()));
    if (coupling_re.size() != rr * rr)
        throw DomainError("expected " + std::to_string(rr * rr) + " coupling entries, got " +
                          std::to_string(coupling_re.size()));
    if (!coupling_im.empty() && coupling_im.size() != rr * rr)
        throw DomainError("expected " + std::to_string(rr * rr) + " imaginary coupling entries, got " +
                          std::to_string(coupling_im.size()));
    for (double v : shifts)
        if (!std::isfinite(v)) throw DomainError("shifts must be finite");
    if (quad_nodes < 2 || quad_nodes > 320) throw DomainError("quad_nodes must lie in [2, 320]");
    if (quad_cutoff < 0.0) throw DomainError("quad_cutoff must be nonnegative");
    if (!(tol >= 1e-10)) throw DomainError("tol must be at least 1e-10");
    if (!(hm_step > 0.0) || hm_step > 1e-2) throw DomainError("hm_step must lie in (0, 1e-2]");
    if (!(hm_tol > 0.0)) throw DomainError("hm_tol must be positive");
    if (hm_smax != 0.0 && !(hm_smax > hm_s0)) throw DomainError("hm_smax must exceed hm_s0");
}

ShiftVector RunConfig::shift_vector() const { return ShiftVector(shifts); }

CouplingMatrix RunConfig::coupling() const {
    std::size_t rr = static_cast<std::size_t>(r);
    ComplexMatrix c(rr, rr);
    for (std::size_t j = 0; j < rr; ++j)
        for (std::size_t k = 0; k < rr; ++k) {
            double im = coupling_im.empty() ? 0.0 : coupling_im[j * rr + k];
            c(j, k) = cplx(coupling_re[j * rr + k], im);
        }
    return CouplingMatrix(c);
}

HMOptions RunConfig::hm_options() const {
    HMOptions o;
    o.s0 = hm_s0;
    o.span = hm_smax > 0.0 ? hm_smax - hm_s0 : 8.0;
    o.step = hm_step;
    o.tol = hm_tol;
    return o;
}

} // namespace ncairy
