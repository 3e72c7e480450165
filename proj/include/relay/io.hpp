#pragma once
// Channel files and sweep output.
//
// A channel file is a strict JSON object with exactly the fields
//   x_size, t_size, y_size : positive integers
//   p_t                    : array of t_size probabilities
//   kernel                 : [x_size][t_size][y_size] nested arrays, each
//                            innermost row a distribution over y
// Unknown fields are rejected. Writing and re-reading a channel reproduces
// every probability bit for bit.

#include <string>
#include <vector>

#include "relay/bounds.hpp"
#include "relay/probability.hpp"

namespace relay::io {

ChannelSpec channel_from_json_text(const std::string& text, const std::string& context);
std::string channel_to_json_text(const ChannelSpec& channel);

ChannelSpec read_channel_file(const std::string& path);
void write_channel_file(const ChannelSpec& channel, const std::string& path);

// CSV with header r0,cutset,upper_bound,caf,closed_capacity,closed_cutset.
// Values are printed with six decimals; closed columns are empty when no
// closed form applies.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace relay::io
