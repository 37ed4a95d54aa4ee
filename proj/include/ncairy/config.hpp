#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "ncairy/kernels.hpp"
#include "ncairy/ncp2.hpp"

namespace ncairy {

enum class OutputFormat { csv, json };

// Settings shared by all subcommands. Files hold `key = value` lines with
// `#` comments; list values are separated by commas or blanks.
struct RunConfig {
    int r = 1;
    std::vector<double> shifts{0.0};
    std::vector<double> coupling_re{1.0}; // row-major r x r
    std::vector<double> coupling_im;      // empty means real
    int quad_nodes = 40;
    double quad_cutoff = 0.0; // 0 selects the default cutoff
    double tol = 1e-10;       // Nystrom refinement tolerance
    double hm_s0 = 2.0;
    double hm_smax = 0.0; // 0 means hm_s0 + 8
    double hm_step = 1e-3;
    double hm_tol = 1e-12;
    OutputFormat output_format = OutputFormat::csv;
    std::uint64_t seed = 7;

    // Throws DomainError on inconsistent sizes or out-of-range values.
    void validate() const;
    ShiftVector shift_vector() const;
    CouplingMatrix coupling() const;
    HMOptions hm_options() const;
};

// Sets one key; throws DomainError for unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config(std::istream& in, RunConfig base = {});

// Throws IOError when the file cannot be read.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

std::vector<double> parse_number_list(const std::string& text);

OutputFormat parse_format(const std::string& text);

} // namespace ncairy
