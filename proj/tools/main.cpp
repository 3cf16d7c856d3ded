#include <iostream>

#include "run.hpp"

int main(int argc, char **argv)
{
	return lltcli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
