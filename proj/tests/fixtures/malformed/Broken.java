class A { int x = ; }
