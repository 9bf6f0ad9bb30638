// Writes the derivation corpus to a directory as .drv files plus a
// manifest (one line per file: name, table, expected verdict). Run from
// the repository root to refresh tests/corpus/rules.

#include <fstream>
#include <iostream>

#include "../tests/support/rule_corpus.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen-corpus <output-dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  std::ofstream manifest(dir + "/manifest.txt");
  if (!manifest) {
    std::cerr << "cannot write to " << dir << "\n";
    return 2;
  }
  for (const corpus::Entry& e : corpus::all_entries()) {
    std::string name = e.table + "_" + e.rule_name + "_" + e.variant + ".drv";
    std::ofstream out(dir + "/" + name);
    out << e.deriv.to_sexpr().to_string() << "\n";
    manifest << name << " " << e.table << " "
             << (e.expect_ok ? "accept" : "reject") << "\n";
  }
  {
    std::ofstream out(dir + "/bad_xi.drv");
    out << corpus::xi_instance().to_sexpr().to_string() << "\n";
    manifest << "bad_xi.drv MLS unknown-rule\n";
  }
  return 0;
}
