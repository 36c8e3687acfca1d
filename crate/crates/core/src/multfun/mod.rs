//! Multiplicative functions, prime sieving and the Euler product `Q`.

mod arith;
mod fixed;
mod local;
mod product;
mod sieve;

pub use arith::{
    euler_phi, factorize, is_squarefree, mobius, num_divisors, omega, squarefree_count,
};
pub use fixed::Fixed;
pub use local::{local_t, t_brute, t_tilde, t_value, LocalTValue, T_BRUTE_LIMIT};
pub use product::{q_bounds, q_bounds_with, QInterval, Q_CERTIFIED_FROM, Q_LOCAL_3_7};
pub use sieve::{for_each_prime_1mod3, primes_1mod3, primes_up_to};
