#include <conjecturer/cli.hpp>

#include <iostream>

int main(int argc, char ** argv) { return conjecturer::run_cli(argc, argv, std::cout, std::cerr); }
