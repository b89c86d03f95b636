"""The dg-category of homotopy-coherent morphisms"""
