#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "crimepat/ingestion.hpp"
#include "crimepat/preprocess.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write the built-in raw-category to crime-type mapping as JSON"};
  std::string schema_text, output;
  app.add_option("--schema", schema_text, "denver or la")->required();
  app.add_option("--output", output, "Destination file")->required();
  CLI11_PARSE(app, argc, argv);

  const auto schema = crimepat::parse_schema(schema_text);
  if (!schema) {
    std::cerr << "error: --schema: unknown schema '" << schema_text << "'\n";
    return 1;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << output << '\n';
    return 2;
  }
  out << crimepat::default_mapping(*schema).to_json().dump(2) << '\n';
  return out ? 0 : 2;
}
