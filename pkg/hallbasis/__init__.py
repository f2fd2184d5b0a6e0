# Make 'hallbasis' a Python package
