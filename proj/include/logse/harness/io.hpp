#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "logse/grid.hpp"
#include "logse/splitting.hpp"

namespace logse::harness {

/// Field snapshot CSV:
///   # a b M t epsilon lambda
///   # <a> <b> <M> <t> <epsilon> <lambda>
///   x,Re,Im
///   <x_j>,<Re u_j>,<Im u_j>     (M rows, round-trip precision)
struct SnapshotData {
  ComplexField field;
  double t;
  ModelParams model;
};

void write_snapshot(std::ostream& out, const ComplexField& u, double t, const ModelParams& p);
void write_snapshot(const std::filesystem::path& path, const ComplexField& u, double t,
                    const ModelParams& p);
SnapshotData read_snapshot(std::istream& in);
SnapshotData read_snapshot(const std::filesystem::path& path);

/// "snapshot_t<t>.csv" with t printed by %.10g.
std::string snapshot_filename(double t);

/// observables.csv: t,mass,momentum,E_total,E_kin,E_int[,fp_iters].
void write_observables(std::ostream& out, const std::vector<ObservableSample>& samples,
                       bool with_fp_iters);

/// Shortest of %.15g..%.17g that reads back to the same double.
std::string format_double(double x);

/// Writes text to path, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace logse::harness
