#pragma once

#include "jlg/mc.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jlg {

// Shortest decimal representation that parses back to exactly the same
// double (std::to_chars). Values below 1e-4 in magnitude come out in
// scientific notation, larger ones in positional form.
std::string format_double(double x);

// RFC-4180 style: comma separated, fields quoted only when they contain a
// comma, quote, or newline; embedded quotes doubled.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Parses the full stream; handles quoted fields and CRLF line ends.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// Grid descriptor: "1,2,5" explicit, "linspace:a:b:count" inclusive linear,
// "logspace:a:b:count" with log10 endpoints a and b.
std::vector<double> parse_grid(const std::string& descriptor);

// Dataset format: one point per line, whitespace-separated coordinates,
// dimension fixed by the first point; '#' comment lines and blank lines are
// skipped; ragged rows are rejected.
PointSet parse_points(std::istream& in);

} // namespace jlg
