#include "orbihall/cli.hpp"

int main(int argc, char** argv) { return orbihall::cli::run(argc, argv); }
