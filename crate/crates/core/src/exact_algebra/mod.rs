//! Exact arithmetic substrate: rationals, the quadratic field `Q(√d)`,
//! polynomials over it, resultants, square tests, Legendre and Hilbert
//! symbols (with a brute-force solubility oracle), and dyadic values in
//! `Q₂/Z₂`.

mod dyadic;
mod factor;
mod local_solve;
mod parse;
mod poly;
mod quad;
mod rational;
mod symbols;

pub use dyadic::Dyadic;
pub use factor::{factor, is_prime, primes_dividing, squarefree_part};
pub use local_solve::{hilbert_bruteforce, hilbert_bruteforce_many};
pub use parse::{parse_poly, parse_quad};
pub use poly::{resultant, QuadPoly};
pub use quad::{is_square_quad, sqrt_quad, QuadElem, QuadField};
pub use rational::{
    int, is_square_rational, isqrt_exact, parse_rational, rat, sqrt_rational, square_class, v2_big, valuation, Rational,
};
pub use symbols::{hilbert_symbol, legendre_symbol, relevant_places, PlaceQ};
