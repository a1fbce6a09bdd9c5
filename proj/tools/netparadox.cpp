// netparadox: network paradox measurements from the command line.
//
//   netparadox karate-demo
//   netparadox analyze --edges g.txt --attr activity=act.csv --events log.csv
//   netparadox shuffle-test --edges g.txt --attr x=x.csv --kind controlled --runs 10
//   netparadox statistical-origins --trials 10000

#include <iostream>

#include "netparadox/cli.hpp"

int main(int argc, char** argv) {
  return netparadox::cli::main_entry(argc, argv, std::cout, std::cerr);
}
