#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ncairy/config.hpp"
#include "ncairy/fredholm.hpp"
#include "ncairy/matrix.hpp"
#include "ncairy/ncp2.hpp"

namespace ncairy {

struct Column {
    std::string name;
    bool is_complex = false;
};

// Homogeneous records. Real columns read the real part of each cell.
struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<cplx>> rows;

    void add_row(std::vector<cplx> row);
};

// CSV: header row, %.12e numbers, LF endings; complex columns become
// re_<name>,im_<name>. JSON: array of objects keyed by column name, complex
// cells as {"re": .., "im": ..}. Throws IOError when the stream fails.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

std::string format_number(double v);

// Grid nodes from S = to down to S = from, about `spacing` apart. Columns:
// S, b_jk (complex, row-major), db_jk.
Table grid_table(const HMGrid& grid, double from, double to, double spacing);

// value (complex), log_abs, nodes_used, est_error, converged.
Table det_result_table(const DetResult& d);

std::string det_result_to_json(const DetResult& d);
DetResult det_result_from_json(const std::string& text);

} // namespace ncairy
