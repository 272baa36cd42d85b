#include "mzmesh.h"
int main(){return mz_version()?0:1;}
