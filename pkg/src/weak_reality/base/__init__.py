"""weak_reality.base"""
