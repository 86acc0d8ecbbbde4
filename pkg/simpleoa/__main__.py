"""
Allow simpleoa to be executed as a module with: python -m simpleoa
"""
from simpleoa.cli import main

if __name__ == "__main__":
    main()
