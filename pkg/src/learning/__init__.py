"""
Learning engine: MCE IRL fitting (single, multi-task, joint) and Reptile
meta-initialisation.
"""
