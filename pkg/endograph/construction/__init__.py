"""The algebras attached to graphs and what is built from them: pure parts, ellipticity, tilde extensions."""
