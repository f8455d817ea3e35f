#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "crimepat/dataset.hpp"
#include "synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write the 1000-record synthetic hotspot fixture as unified JSONL"};
  std::string output;
  app.add_option("--output", output, "Destination file")->required();
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << output << '\n';
    return 2;
  }
  crimepat::write_unified_jsonl(out, crimepat::synth::generate());
  return out ? 0 : 2;
}
