"""Self-maps of the graph algebras: ansatz, constraints, case trees, homotopy classes and degrees."""
