# Tests for ris-uav-channel
