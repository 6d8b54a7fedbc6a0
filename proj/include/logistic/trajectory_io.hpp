#pragma once

// Trajectory files.
//
// CSV: optional '#'-prefixed config header, then "time,state" and one row per
// event. Binary (all fields little-endian):
//
//   offset  size  field
//   0       4     magic "LGTR"
//   4       4     u32 format version (1)
//   8       8     f64 b
//   16      8     f64 mu
//   24      8     f64 gamma
//   32      8     i64 L
//   40      4     u32 variant (0 unmodified, 1 modified)
//   44      4     u32 stop reason (0 time limit, 1 hit target, 2 absorbed)
//   48      8     f64 end time
//   56      8     u64 seed
//   64      8     u64 event count n
//   72      16 n  records: f64 time, i64 state

#include <iosfwd>
#include <string>

#include "logistic/simulator.hpp"

namespace logistic {

inline constexpr std::uint32_t kTrajectoryFormatVersion = 1;

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::string& header = {});
void write_trajectory_binary(std::ostream& os, const Trajectory& traj);
/// Throws DomainError on a bad magic, unknown version or truncated file.
Trajectory read_trajectory_binary(std::istream& is);

}  // namespace logistic
