#pragma once

#include <string>

#include "movewin/evolve.hpp"
#include "movewin/harness.hpp"

namespace movewin {

/// Binary snapshot, little-endian:
///   "MWFIELD\0", u32 version (1), u32 dim, f64 L, u32 N, u32 representation (0 = spectral),
///   then (2N+1)^d pairs of f64 (re, im) in DFT coefficient order.
void write_field(const std::string& path, const Field& field);
Field read_field(const std::string& path);

/// Samples on the grid nodes: header x,re,im,abs (1-D) or x,y,re,im,abs (2-D).
void write_field_csv(const std::string& path, const Field& field);

/// param,L,N,tau,error
void write_table_csv(const std::string& path, const ConvergenceTable& table);

/// Slope, residual, partial flag, reference provenance and config hash.
std::string table_summary_json(const ConvergenceTable& table, const std::string& config_hash);

void write_text(const std::string& path, const std::string& text);

inline constexpr const char* kProgressHeader = "step,t,norm,boundary_indicator";
inline constexpr const char* kExtensionHeader = "t,old_L,new_L,old_N,new_N,indicator";

std::string progress_row(const ProgressRecord& r);
std::string extension_row(const ExtensionEvent& e);

}  // namespace movewin
