#pragma once

namespace fraclap {

// Surface area ω_{n-1} = 2 π^{n/2} / Γ(n/2) of the unit sphere in R^n.
// sphere_area(1) = 2 counts the two points of S^0.
double sphere_area(int n);

}  // namespace fraclap
