# Cyclotomic block engine package
