//! Objective functions. Every problem reports objectives in minimization
//! convention; maximization problems negate their values.

mod benchmarks;
mod fronts;
mod knapsack;
mod maxcut;
mod mobcpp;

pub use benchmarks::{inverse_trap, trap, Lotz, Trap5Pair, ZeromaxOnemax, TRAP_K};
pub use fronts::{brute_force_front, optimal_front, MAX_ENUMERATION_LEN};
pub use knapsack::KnapsackInstance;
pub use maxcut::{Edge, MaxcutInstance};
pub use mobcpp::{
    generate_mobcpp_instance, Commodity, EncodingLayout, Group, Hall, Mobcpp, MobcppInstance, MobcppParams,
    Recipe, Yield,
};
