#pragma once

#include "presched/online.hpp"
#include "presched/problems.hpp"

namespace presched {

// num_gadgets = 0 means 2^m
OnlineInstance gen_online_lb_gadget(int m, std::int64_t num_gadgets, std::uint64_t seed, Time fat_duration);
OnlineInstance gen_multiresource_lb(int d, int m, std::uint64_t seed);
OnlineInstance gen_greedy_killer(int n);
Instance gen_random_dag(int n, double edge_prob, Time max_dur, int d, std::uint64_t seed);

ScsInstance gen_random_scs(int rho, int max_sequences, int max_length, std::uint64_t seed);
LtsInstance gen_random_lts(int max_jobs, int max_machines, double edge_prob, std::int64_t max_load, std::uint64_t seed);

}  // namespace presched
