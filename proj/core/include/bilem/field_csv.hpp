#pragma once

#include <iosfwd>
#include <string>

#include "bilem/radial_field.hpp"

namespace bilem {

/// Writes the field as CSV with the column contract (r, u, du, v, dv) at
/// 17 significant digits, preceded by one metadata comment line
///   # bilem-field n=<int> p=<real> kind=<power|negative|navier> [lambda=<real>] [smooth=0|1]
/// so downstream commands can consume the file without extra flags.
void write_field_csv(std::ostream& os, const RadialField& field);
void write_field_csv(const std::string& path, const RadialField& field);

/// Reads a field CSV (with or without the metadata line; parameters can be
/// overridden by the caller).  Derivative columns are interpolated
/// shape-preservingly and the running integrals are rebuilt by quadrature.
struct FieldCsvOverrides {
    int n = 0;          ///< 0 = take from metadata
    double p = 0.0;     ///< 0 = take from metadata
};

RadialField read_field_csv(std::istream& is, const FieldCsvOverrides& over = {});
RadialField read_field_csv(const std::string& path, const FieldCsvOverrides& over = {});

}  // namespace bilem
