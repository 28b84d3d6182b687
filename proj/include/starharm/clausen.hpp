#pragma once

namespace starharm {

/// Clausen function Cl2(x) = sum_k sin(kx)/k^2 = -int_0^x log|2 sin(s/2)| ds.
///
/// Odd, 2*pi-periodic, continuous everywhere; accurate to ~1e-15 absolute.
double clausen2(double x);

}  // namespace starharm
