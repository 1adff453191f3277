#pragma once

// Translation matrix elements coupling the objects' wave bases across the
// separation. All values real on the imaginary frequency axis.

#include "casimir/model.hpp"
#include "casimir/scattering.hpp"

namespace casimir {

// Cylinder-to-cylinder element K_{n+n'}(p d) for center separation d.
double cyl_translation(int n, int nprime, double p, double d);

// Plane-wave propagator across a gap H: exp(-sqrt(kperp^2 + kappa^2) H).
double plane_wave_propagator(double kperp, double kappa, double H);

// Parabolic-cylinder -> plane-wave translation element over distance d with
// inclination theta. On the imaginary axis the element U is complex for
// kx != 0, but splits into an even (real) and odd (imaginary) part under
// kx -> -kx; the assembled combination int dkx U(theta) r U(-theta) pairs
// the phases so only these two reals matter.
struct PlaneWaveCoupling {
    double even = 0.0;  // Re U = even part in kx
    double odd = 0.0;   // Im U = odd part in kx (element = even + i*odd)
};
PlaneWaveCoupling parabola_plane_u(int nu, double kx, double kz, double kappa, double d,
                                   double theta);

// Outgoing cylindrical wave -> plane-wave expansion coefficient (Sommerfeld):
//   K_n(p r) e^{i n phi} = (1/2) int dk/q e^{i k x + q y} g_n(k),  y < 0,
// with q = sqrt(k^2 + p^2), k = p sinh(u). The coefficient g_n = (-i)^n e^{n u}
// pairs with the regular re-expansion i^n e^{n u} so that the assembled
// round trip is real; this routine returns the real magnitude e^{n u}
// (n-th power of (q + k)/p). The i^{m-n} phases cancel in the determinant
// (diagonal similarity) and are not represented.
double cyl_to_plane(int n, double k, double p);

}  // namespace casimir
