#pragma once

#include <span>

#include "hyperslice/geometry.hpp"

namespace hyperslice {

enum class Precision {
  /// Double precision, escalating to extended precision when the cancellation
  /// bound exceeds 1e-9 of the result.
  automatic,
  double_only,
  extended,
};

struct SumEstimate {
  double value = 0.0;
  double err = 0.0;
  bool extended = false;
};

/// n! as a double; exact for n <= 20.
double factorial(int n);

/// sum over vertices v with a.v <= b of (-1)^sigma(v) (b - a.v)^power, divided
/// by power! * pi(a). Coordinates below 1e-14 are dropped first, which is exact
/// for the halfspace (power = d) and section (power = d - 1) volumes.
SumEstimate signed_vertex_sum(std::span<const double> a, double b, int power,
                              Precision precision = Precision::automatic,
                              EnumerationLimits limits = {});

/// d-volume of {x in [0,1]^d : a.x <= b} for any nonzero a >= 0.
SumEstimate halfspace_volume(std::span<const double> a, double b,
                             Precision precision = Precision::automatic,
                             EnumerationLimits limits = {});

/// (d-1)-volume of {x in [0,1]^d : a.x = b} for any nonzero a >= 0.
SumEstimate section_volume(std::span<const double> a, double b,
                           Precision precision = Precision::automatic,
                           EnumerationLimits limits = {});

VolumeResult section_volume_vertex_sum(const SectionSpec& spec,
                                       Precision precision = Precision::automatic,
                                       EnumerationLimits limits = {});

VolumeResult halfspace_volume(const SectionSpec& spec,
                              Precision precision = Precision::automatic,
                              EnumerationLimits limits = {});

/// b^(d-1) / ((d-1)! pi(a)); requires a corner cut.
double corner_volume(const SectionSpec& spec);

/// (b^(d-1) - (b - a_i)^(d-1)) / ((d-1)! pi(a)) where a_i is the only
/// coordinate below b; requires an edge cut.
double edge_volume(const SectionSpec& spec);

/// Central difference -(H(t + h) - H(t - h)) / 2h of the halfspace volume.
/// Throws Error(cell_crossing) when a vertex crosses the hyperplane in
/// [t - h, t + h].
double section_from_halfspace_derivative(const SectionSpec& spec, double h);

}  // namespace hyperslice
