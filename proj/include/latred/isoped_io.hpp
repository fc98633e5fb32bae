#pragma once

#include <string>

#include "latred/piped.hpp"

namespace latred {

// "isoped/1" JSON interchange for isolating parallelepipeds. Weight-profile
// gadgets serialize alphas/t_star/epsilon and regenerate the dense rows on
// read; literal gadgets carry dense decimal coordinates only.
// write -> read -> write is byte-identical.
std::string write_isoped(const IsolatingParallelepiped& piped);
IsolatingParallelepiped read_isoped(const std::string& text);
void write_isoped_file(const std::string& path, const IsolatingParallelepiped& piped);
IsolatingParallelepiped read_isoped_file(const std::string& path);

}  // namespace latred
