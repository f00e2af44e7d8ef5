"""weak_reality.events"""
