#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rcv/formats.hpp"

#ifndef RCV_TEST_DATA_DIR
#error "RCV_TEST_DATA_DIR must point at tests/data"
#endif

namespace rcv::fixtures {

inline std::string path(const std::string& name) { return std::string(RCV_TEST_DATA_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline Profile load(const std::string& name) {
  return parse_profile(read(name), *format_for_path(name));
}

inline Profile burlington() { return load("burlington3.rcv"); }
inline Profile minneapolis() { return load("minneapolis3.rcv"); }
inline Profile minneapolis_precincts() { return load("minneapolis3_precincts.rcv"); }

}  // namespace rcv::fixtures
