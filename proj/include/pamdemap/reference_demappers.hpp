#pragma once

// Digital reference demappers: exact LLRs and the max-log approximation.
// LLR sign convention: L_k > 0 favours b_k = 1.

#include <span>

#include "pamdemap/channel.hpp"
#include "pamdemap/constellation.hpp"

namespace pamdemap {

/// log sum_{i: b_k=1} exp(-(r-x_i)^2/2s^2) - log sum_{i: b_k=0} (...), computed
/// with a max-shifted log-sum-exp.
double exact_llr(double r, int k, const Constellation& c, const ChannelParams& p);

/// SNR * (min_{b_k=0} (r-x_i)^2 - min_{b_k=1} (r-x_i)^2), brute force.
double maxlog_llr(double r, int k, const Constellation& c, const ChannelParams& p);

/// All bit positions at once; out.size() must equal c.bits_per_symbol().
void exact_llrs(double r, const Constellation& c, const ChannelParams& p, std::span<double> out);
void maxlog_llrs(double r, const Constellation& c, const ChannelParams& p, std::span<double> out);

}  // namespace pamdemap
